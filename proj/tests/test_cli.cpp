#include "ibc/experiments.hpp"
#include "ibc/serialize.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace ibc;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("config parsing: full round trip") {
    ExperimentConfig cfg = parse_config(
        "# sample\n"
        "experiment = bisection\n"
        "eps = 0.1, 0.001\n"
        "t = 3.5\n"
        "n = 24\n"
        "seed = 7\n");
    CHECK(cfg.experiment == "bisection");
    REQUIRE(cfg.eps.size() == 2);
    CHECK(cfg.eps[1] == 0.001);
    CHECK(cfg.t == 3.5);
    CHECK(cfg.n == 24);
    CHECK(cfg.seed == 7);
}

TEST_CASE("config parsing: defaults and errors") {
    ExperimentConfig cfg = parse_config("experiment = kashin\n");
    CHECK(cfg.seed == 42);  // recorded default
    CHECK(cfg.t == 2.0);

    CHECK_THROWS_AS(parse_config(""), ConfigError);                        // missing experiment
    CHECK_THROWS_AS(parse_config("experiment = nope\n"), ConfigError);     // unknown name
    CHECK_THROWS_AS(parse_config("experiment = kashin\nt = -1\n"), ConfigError);
    try {
        parse_config("experiment = kashin\nbogus = 3\n");
        FAIL("unknown key accepted");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
        CHECK(std::string(e.what()).find("bogus") != std::string::npos);
    }
    try {
        parse_config("experiment = kashin\nt = -1\n");
        FAIL("range error accepted");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("t") != std::string::npos);
    }
}

TEST_CASE("experiment catalog names are unique and documented") {
    const auto& cat = experiment_catalog();
    CHECK(cat.size() >= 8);
    for (std::size_t i = 0; i < cat.size(); ++i) {
        CHECK_FALSE(cat[i].description.empty());
        for (std::size_t j = i + 1; j < cat.size(); ++j)
            CHECK(cat[i].name != cat[j].name);
    }
}

TEST_CASE("experiments are deterministic: reruns produce identical bytes") {
    ExperimentConfig cfg = parse_config("experiment = bisection\nn = 12\n");
    fs::path tmp = fs::temp_directory_path() / "ibc-test-determinism";
    fs::remove_all(tmp);
    cfg.out = tmp / "a";
    ExperimentOutcome first = run_experiment(cfg);
    std::string csv1 = slurp(first.out_dir / "results.csv");
    std::string json1 = slurp(first.out_dir / "summary.json");
    cfg.out = tmp / "b";
    ExperimentOutcome second = run_experiment(cfg);
    CHECK(slurp(second.out_dir / "results.csv") == csv1);
    CHECK(slurp(second.out_dir / "summary.json") == json1);
    CHECK(first.all_pass);
    // the summary names its acceptance criterion and records the seed
    CHECK(first.summary.contains("criterion"));
    CHECK(first.summary["seed"] == 42);
    fs::remove_all(tmp);
}

TEST_CASE("every cataloged experiment runs, passes, and cites a criterion") {
    fs::path tmp = fs::temp_directory_path() / "ibc-test-all";
    fs::remove_all(tmp);
    for (const auto& info : experiment_catalog()) {
        ExperimentConfig cfg = parse_config("experiment = " + info.name + "\n");
        // keep the heavier demos small in the unit suite
        if (info.name == "kashin-bp") cfg.n = 8, cfg.m = 16;
        if (info.name == "bisection") cfg.n = 12;
        if (info.name == "product") cfg.n = 16, cfg.m = 4;
        cfg.out = tmp / info.name;
        ExperimentOutcome out = run_experiment(cfg);
        INFO(info.name);
        CHECK(out.all_pass);
        CHECK(fs::exists(out.out_dir / "results.csv"));
        CHECK(fs::exists(out.out_dir / "summary.json"));
        CHECK_FALSE(out.summary["criterion"].get<std::string>().empty());
        CHECK(out.summary["experiment"] == info.name);
        for (const auto& claim : out.summary["claims"]) {
            CHECK(claim.contains("name"));
            CHECK(claim["pass"].get<bool>());
        }
    }
    fs::remove_all(tmp);
}

TEST_CASE("IBC_OUT overrides the configured output directory") {
    fs::path tmp = fs::temp_directory_path() / "ibc-test-envout";
    fs::remove_all(tmp);
    setenv("IBC_OUT", tmp.string().c_str(), 1);
    ExperimentConfig cfg = parse_config("experiment = kurtosis\nout = should-not-be-used\n");
    ExperimentOutcome out = run_experiment(cfg);
    unsetenv("IBC_OUT");
    CHECK(out.out_dir == tmp);
    CHECK(fs::exists(tmp / "results.csv"));
    fs::remove_all(tmp);
}

TEST_CASE("format_double uses 17 significant digits and '.' decimals") {
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(format_double(1.0) == "1");
    CHECK(format_double(-2.5) == "-2.5");
    // round trip exactness
    double x = 0.12345678901234567;
    CHECK(std::stod(format_double(x)) == x);
}

TEST_CASE("csv writer validates rows and renders deterministically") {
    CsvWriter w({"a", "b"});
    w.add_row({1.0, 0.5});
    w.add_row_mixed({"x", "2"});
    CHECK(w.str() == "a,b\n1,0.5\nx,2\n");
    CHECK_THROWS(w.add_row({1.0}));
}

TEST_CASE("serializers: lattice and element round trips") {
    nlohmann::json j = to_json(Lattice{7, {1, 3}});
    CHECK(j["N"] == 7);
    CHECK(j["g"][1] == 3);

    PWLinear f = make_pwlinear({0.0, 1.0}, {0.5, -0.5});
    std::string pw = pwlinear_csv(f);
    CHECK(pw.find("x,v") == 0);
    CHECK(pw.find("0.5") != std::string::npos);

    TrigPoly tp{1, {}};
    tp.coeff[{2}] = Scalar(1.0, -1.0);
    std::string tc = trigpoly_csv(tp);
    CHECK(tc.find("2,1,-1") != std::string::npos);

    Eigen::MatrixXcd A(1, 1);
    A(0, 0) = Scalar(3.0, 4.0);
    std::string mc = matrix_csv(A);
    CHECK(mc.find("1,1") == 0);
    CHECK(mc.find("3") != std::string::npos);
    CHECK(mc.find("4") != std::string::npos);
}
