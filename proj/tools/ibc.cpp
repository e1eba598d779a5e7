#include "ibc/acceptance.hpp"
#include "ibc/experiments.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

int cmd_run(const std::string& config_path) {
    std::ifstream in(config_path);
    if (!in) {
        std::cerr << "error: cannot open config file '" << config_path << "'\n";
        return 2;
    }
    std::ostringstream buf;
    buf << in.rdbuf();

    ibc::ExperimentConfig cfg;
    try {
        cfg = ibc::parse_config(buf.str());
    } catch (const ibc::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }
    try {
        ibc::ExperimentOutcome outcome = ibc::run_experiment(cfg);
        std::cout << "experiment: " << cfg.experiment << " (seed " << cfg.seed << ")\n";
        for (const auto& claim : outcome.summary["claims"])
            std::cout << "  " << (claim["pass"].get<bool>() ? "pass" : "FAIL") << ": "
                      << claim["name"].get<std::string>() << "\n";
        std::cout << "wrote " << (outcome.out_dir / "results.csv").string() << " and "
                  << (outcome.out_dir / "summary.json").string() << "\n";
        return outcome.all_pass ? 0 : 1;
    } catch (const ibc::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

int cmd_list() {
    for (const auto& info : ibc::experiment_catalog())
        std::cout << info.name << "\t" << info.description << "\n";
    return 0;
}

int cmd_check(std::uint64_t seed) {
    bool all = true;
    for (int id = 1; id <= 11; ++id) {
        ibc::CriterionResult r = ibc::run_criterion(id, seed);
        std::cout << ibc::format_criterion(r) << std::endl;
        all = all && r.pass;
    }
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"information-based complexity experiments"};
    app.require_subcommand(1);

    std::string config_path;
    auto* run = app.add_subcommand("run", "run an experiment from a key = value config file");
    run->add_option("config", config_path, "path to the config file")->required();

    auto* list = app.add_subcommand("list", "print the experiment catalog");

    std::uint64_t seed = 42;
    auto* check = app.add_subcommand("check", "run the full acceptance suite");
    check->add_option("--seed", seed, "seed for all pseudo-randomness (default 42)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;  // usage errors exit 2, --help exits 0
    }

    if (run->parsed()) return cmd_run(config_path);
    if (list->parsed()) return cmd_list();
    if (check->parsed()) return cmd_check(seed);
    return 2;
}
