#include "ibc/experiments.hpp"

#include "ibc/instances1d.hpp"
#include "ibc/korobov.hpp"
#include "ibc/recovery.hpp"
#include "ibc/sampling.hpp"
#include "ibc/serialize.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <random>
#include <sstream>

namespace ibc {

namespace {

std::vector<double> parse_double_list(const std::string& s, int line) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t pos = 0;
            out.push_back(std::stod(item, &pos));
            while (pos < item.size() && std::isspace(static_cast<unsigned char>(item[pos]))) ++pos;
            if (pos != item.size()) throw std::invalid_argument("trailing characters");
        } catch (const std::exception&) {
            throw ConfigError("line " + std::to_string(line) + ": cannot parse number '" + item + "'");
        }
    }
    if (out.empty()) throw ConfigError("line " + std::to_string(line) + ": empty list");
    return out;
}

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    std::size_t b = s.find_last_not_of(" \t\r");
    return a == std::string::npos ? "" : s.substr(a, b - a + 1);
}

std::mt19937_64 rng_for(std::uint64_t seed, std::uint64_t salt) {
    return std::mt19937_64(seed ^ (0x9e3779b97f4a7c15ULL * (salt + 1)));
}

struct Claims {
    nlohmann::json list = nlohmann::json::array();
    bool all_pass = true;

    void add(const std::string& name, double bound, double observed, bool pass) {
        list.push_back({{"name", name}, {"bound", bound}, {"observed", observed}, {"pass", pass}});
        all_pass = all_pass && pass;
    }
};

// ---- experiment bodies; each fills the CSV and the claim list ----

void run_kashin(const ExperimentConfig& cfg, CsvWriter& csv, Claims& claims) {
    double worst_dev = 0.0;
    for (int n = 1; n <= cfg.m; ++n) {
        KashinAlgorithm ka = kashin_linear_algorithm(cfg.m, n);
        double formula = std::sqrt(static_cast<double>(cfg.m - n) / cfg.m);
        csv.add_row({static_cast<double>(n), ka.exact_error, formula});
        worst_dev = std::max(worst_dev, std::abs(ka.exact_error - formula));
    }
    claims.add("exact error equals sqrt((m-n)/m)", 1e-12, worst_dev, worst_dev <= 1e-12);
}

void run_kashin_bp(const ExperimentConfig& cfg, CsvWriter& csv, Claims& claims) {
    auto rng = rng_for(cfg.seed, 6000);
    std::normal_distribution<double> g(0.0, 1.0);
    const Eigen::Index m = cfg.m, n = cfg.n;
    if (n >= m) throw ConfigError("kashin-bp: need n < m");
    Eigen::MatrixXcd N(n, m);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < m; ++j) N(i, j) = g(rng) / std::sqrt(static_cast<double>(n));
    double worst = 0.0;
    for (int s = 0; s < 200; ++s) {
        Eigen::VectorXcd f(m);
        for (Eigen::Index j = 0; j < m; ++j) f[j] = g(rng);
        f /= f.cwiseAbs().sum();
        Eigen::VectorXcd h = basis_pursuit(N, N * f, 1e-7, 200000);
        double e = (f - h).norm();
        csv.add_row({static_cast<double>(s), e});
        worst = std::max(worst, e);
    }
    double linear_opt = std::sqrt(static_cast<double>(m - n) / m);
    claims.add("basis pursuit below the linear optimum", linear_opt, worst, worst < linear_opt);
}

PWLinear bisection_test_function(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> x, v;
    for (int j = 0; j <= 8; ++j) x.push_back(j / 8.0);
    double val = -0.4 + 0.3 * u(rng);
    for (int j = 0; j <= 8; ++j) {
        v.push_back(val);
        val += (j < 4 ? 0.05 + 0.95 * u(rng) : 2.0 * u(rng) - 1.0) / 8.0;
    }
    PWLinear f = make_pwlinear(std::move(x), std::move(v));
    double nl = f.norm_lip();
    return nl > 1.0 ? pwl_scale(f, 1.0 / nl) : f;
}

void run_bisection(const ExperimentConfig& cfg, CsvWriter& csv, Claims& claims) {
    if (cfg.n < 2) throw ConfigError("bisection: need n >= 2");
    auto rng = rng_for(cfg.seed, 7000);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<PWLinear> funcs;
    for (int i = 0; i < 20; ++i) funcs.push_back(bisection_test_function(rng));

    bool adaptive_ok = true, gap_ok = true;
    double worst_ratio = 0.0, worst_gap_dev = 0.0;
    for (int k = 2; k <= cfg.n; ++k) {
        AdaptiveAlgorithm alg = bisection_algorithm(k);
        double bound = std::pow(2.0, -k);
        double err = 0.0;
        for (const PWLinear& f : funcs) {
            auto [out, cost] = run_algorithm(alg, Element{f});
            err = std::max(err,
                           std::abs(bisection_solution(f) - std::get<VectorElem>(out).v[0].real()));
        }
        adaptive_ok = adaptive_ok && err <= bound + 1e-14;
        worst_ratio = std::max(worst_ratio, bound > 0 ? err / bound : 0.0);

        std::vector<double> nodes;
        for (int j = 0; j < k; ++j) nodes.push_back(u(rng));
        BisectionAdversarialPair pair = bisection_adversarial_pair(nodes, k);
        double gap = std::abs(pair.sf - pair.sg);
        double target = 1.0 / (4.0 * k);
        gap_ok = gap_ok && std::abs(gap - target) <= 1e-14;
        worst_gap_dev = std::max(worst_gap_dev, std::abs(gap - target));
        csv.add_row({static_cast<double>(k), err, bound, 1.0 / (8.0 * k), gap});
    }
    claims.add("adaptive error within 2^-n", 1.0, worst_ratio, adaptive_ok);
    claims.add("adversarial gap equals 1/(4n)", 1e-14, worst_gap_dev, gap_ok);
    bool crossover = true;
    for (int k = std::max(8, 2); k <= std::max(cfg.n, 8); ++k)
        crossover = crossover && std::pow(2.0, -k) < 1.0 / (8.0 * k);
    claims.add("crossover 2^-n < 1/(8n) for n >= 8", 0.0, crossover ? 1.0 : 0.0, crossover);
}

void run_product(const ExperimentConfig& cfg, CsvWriter& csv, Claims& claims) {
    const int M = cfg.m, n = cfg.n;  // m = number of blocks
    if (M < 1 || n <= M) throw ConfigError("product: need 1 <= m < n");
    auto rng = rng_for(cfg.seed, 8000);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    bool err_ok = true, cost_ok = true, adv_ok = true;
    double worst_err = 0.0, worst_adv = 1e300;
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> w(static_cast<std::size_t>(M));
        double tot = 0.0;
        for (double& x : w) tot += (x = 0.05 + u(rng));
        BlockElem f;
        for (int b = 0; b < M; ++b) {
            std::vector<double> bx{0.0};
            for (int j = 1; j <= 5; ++j) bx.push_back(j / 6.0 + 0.05 * (2.0 * u(rng) - 1.0));
            bx.push_back(1.0);
            std::vector<double> bv(bx.size());
            for (double& val : bv) val = 2.0 * u(rng) - 1.0;
            PWLinear blk = make_pwlinear(std::move(bx), std::move(bv));
            double nl = blk.norm_lip();
            if (nl > 0.0) blk = pwl_scale(blk, 0.95 * w[static_cast<std::size_t>(b)] / (tot * nl));
            f.blocks.push_back(std::move(blk));
        }
        ProductResult res = product_adaptive(f, n, M);
        err_ok = err_ok && res.sup_error <= 2.0 / (n - M) + 1e-12;
        cost_ok = cost_ok && res.cost <= static_cast<std::size_t>(n);
        worst_err = std::max(worst_err, res.sup_error);

        BlockElem adv = product_adversarial(res.allocation, M, n);
        double sup = 0.0;
        for (const auto& blk : adv.blocks) sup = std::max(sup, blk.norm_linf());
        adv_ok = adv_ok && sup >= static_cast<double>(M) / (2.0 * n) - 1e-12;
        worst_adv = std::min(worst_adv, sup);
        for (int b = 0; b < M; ++b)
            for (double x : midpoint_nodes(res.allocation[static_cast<std::size_t>(b)]))
                adv_ok = adv_ok && adv.blocks[static_cast<std::size_t>(b)].eval(x) == 0.0;
        csv.add_row({static_cast<double>(trial), res.sup_error, 2.0 / (n - M),
                     static_cast<double>(res.cost), sup, static_cast<double>(M) / (2.0 * n)});
    }
    claims.add("adaptive sup error within 2/(n-M)", 2.0 / (n - M), worst_err, err_ok);
    claims.add("cost within n", static_cast<double>(n), static_cast<double>(n), cost_ok);
    claims.add("adversary reaches M/(2n) and vanishes at nodes", static_cast<double>(M) / (2.0 * n),
               worst_adv, adv_ok);
}

void run_kurtosis(const ExperimentConfig& cfg, CsvWriter& csv, Claims& claims) {
    auto rng = rng_for(cfg.seed, 9000);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    bool ok = true;
    for (double eps : cfg.eps)
        for (double delta : {0.1, 0.01}) {
            std::vector<double> pts;
            for (int j = 0; j < cfg.n; ++j) pts.push_back(u(rng));
            PWLinear f = kurtosis_adversarial(pts, eps, delta);
            double l4 = std::pow(f.norm_l4_p4(), 0.25);
            double l2 = std::sqrt(f.norm_l2_sq());
            bool vanish = true;
            for (double p : pts) vanish = vanish && f.eval(p) == 0.0;
            bool pass = l4 <= 4.0 * eps * (1.0 + 1e-12) &&
                        l2 >= 4.0 * eps * std::sqrt(1.0 - delta) * (1.0 - 1e-12) && vanish;
            ok = ok && pass;
            csv.add_row({eps, delta, static_cast<double>(cfg.n), l4, l2, 2.0 * eps * (1.0 - delta)});
        }
    claims.add("adversary norms certify error >= 2 eps (1-delta)", 0.0, ok ? 1.0 : 0.0, ok);
}

PWLinear sobolev_member(std::mt19937_64& rng, const ConeSpec& cone) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> x;
    for (int j = 0; j <= 10; ++j) x.push_back(j / 10.0);
    std::vector<double> pert(x.size());
    for (double& p : pert) p = u(rng);
    double base = 1.0 + 0.5 * std::abs(u(rng));
    for (double s = 0.5; s > 1e-6; s *= 0.5) {
        std::vector<double> v(x.size());
        for (std::size_t j = 0; j < x.size(); ++j) v[j] = base + s * pert[j];
        PWLinear f = make_pwlinear(x, v);
        if (cone_contains(f, cone, 0.0)) return f;
    }
    return pwl_constant(base);
}

void run_sobolev_cone(const ExperimentConfig& cfg, CsvWriter& csv, Claims& claims) {
    if (!(cfg.t > 0.0)) throw ConfigError("sobolev-cone: need t > 0");
    SobolevInstance inst = sobolev_instance(cfg.t);
    auto rng = rng_for(cfg.seed, 10000);
    PWLinear f = sobolev_member(rng, inst.cone);
    double worst_ratio = 0.0;
    std::vector<double> lx, ly;
    for (double eps : cfg.eps) {
        if (!(eps > 0.0)) throw ConfigError("sobolev-cone: eps must be positive");
        AdaptiveAlgorithm alg = sobolev_cone_solver(eps, cfg.t);
        auto [out, cost] = run_algorithm(alg, Element{f});
        double resid = element_distance(NormSpec::l2(), Element{f}, out);
        worst_ratio = std::max(worst_ratio, resid / eps);
        csv.add_row({eps, static_cast<double>(cost.n()), resid});
        lx.push_back(std::log(1.0 / eps));
        ly.push_back(std::log(static_cast<double>(cost.n())));
    }
    claims.add("residual/eps ratio", 1.0, worst_ratio, worst_ratio <= 1.0);
    if (lx.size() >= 2) {
        double xbar = 0.0, ybar = 0.0, sxx = 0.0, sxy = 0.0;
        for (double v : lx) xbar += v / static_cast<double>(lx.size());
        for (double v : ly) ybar += v / static_cast<double>(ly.size());
        for (std::size_t i = 0; i < lx.size(); ++i) {
            sxx += (lx[i] - xbar) * (lx[i] - xbar);
            sxy += (lx[i] - xbar) * (ly[i] - ybar);
        }
        double slope = sxy / sxx;
        claims.add("cost exponent of 1/eps within 1.0 +- 0.1", 1.0, slope,
                   std::abs(slope - 1.0) <= 0.1);
    }
}

void run_rescaling(const ExperimentConfig& cfg, CsvWriter& csv, Claims& claims) {
    auto rng = rng_for(cfg.seed, 11000);
    std::normal_distribution<double> g(0.0, 1.0);
    const Eigen::Index m = 4;
    auto gvec = [&](Eigen::Index sz) {
        Eigen::VectorXcd v(sz);
        for (Eigen::Index i = 0; i < sz; ++i) v[i] = g(rng);
        return v;
    };
    Eigen::VectorXcd base1 = gvec(m), base2 = gvec(m), mix = gvec(m);
    Eigen::MatrixXcd S(2, m);
    S.row(0) = gvec(m).transpose();
    S.row(1) = gvec(m).transpose();

    InformationMap info;
    info.select = [base1, base2, mix](std::size_t j, const Data& prior) -> Measurement {
        if (j == 1) return LinearFunctional{base1};
        return LinearFunctional{(base2 + prior[0].real() * mix).eval()};
    };
    info.stop = [](const Data& data) { return data.size() >= 2; };

    struct Pair {
        Eigen::VectorXcd u, v;
    };
    std::vector<Pair> pairs;
    double D = 0.0;
    for (int i = 0; i < 50; ++i) {
        Eigen::VectorXcd u = gvec(m);
        u *= 0.5 / u.norm();
        Eigen::MatrixXcd rows(2, m);
        rows.row(0) = base1.transpose();
        rows.row(1) = (base2 + (base1.transpose() * u)(0).real() * mix).transpose();
        Eigen::MatrixXcd K = kernel_basis(rows);
        Eigen::VectorXcd h = K * gvec(K.cols());
        if (h.norm() > 0.0) h *= 0.4 / h.norm();
        D = std::max(D, (S * h).norm());
        pairs.push_back({u, (u + h).eval()});
    }
    bool ok = true;
    for (double r : {2.0, 10.0}) {
        InformationMap info_r = rescale_information(info, r);
        double worst = 0.0;
        for (const Pair& p : pairs) {
            Data df = run_information(info_r, Element{VectorElem{(p.u / r).eval(), true}}).first;
            Data dg = run_information(info_r, Element{VectorElem{(p.v / r).eval(), true}}).first;
            for (std::size_t j = 0; j < df.size(); ++j)
                ok = ok && std::abs(df[j] - dg[j]) <= 1e-10;
            worst = std::max(worst, (S * (p.u - p.v)).norm() / r);
        }
        ok = ok && worst <= D / r + 1e-9;
        csv.add_row({r, worst, D / r});
    }
    claims.add("matched gaps under N_r within diam proxy / r", 0.0, ok ? 1.0 : 0.0, ok);
}

void run_korobov(const ExperimentConfig& cfg, CsvWriter& csv, Claims& claims) {
    KorobovParams params{cfg.alpha, cfg.gamma, cfg.d};
    params.validate();
    // zero-collision CBC lattice
    long N_found = 0;
    auto A = index_set(cfg.M, params);
    long N0 = cfg.N > 0 ? cfg.N : static_cast<long>(A.size());
    for (long N = next_prime(N0); N <= 100000; N = next_prime(N + 1)) {
        if (cbc_generating_vector(N, params, cfg.M).collisions == 0) {
            N_found = N;
            break;
        }
    }
    claims.add("zero-collision CBC lattice within the prime scan", 0.0,
               N_found > 0 ? 0.0 : 1.0, N_found > 0);

    const double M_cert = 25.0 * cfg.M;
    KorobovInstance inst =
        korobov_instance(cfg.t, cfg.M, params, KorobovEstimator::Lattice, M_cert, cfg.seed);
    auto cert = index_set(M_cert, params);
    auto rng = rng_for(cfg.seed, 12000);
    std::normal_distribution<double> g(0.0, 1.0);
    auto identity = [](const Element& f) { return f; };
    double worst_ratio = 0.0;
    const double wtol = cfg.M * (1.0 + 1e-12);
    for (double eps : cfg.eps) {
        TrigPoly basep{cfg.d, {}}, tail{cfg.d, {}};
        for (const auto& k : cert) {
            Scalar c(g(rng), g(rng));
            if (korobov_weight(k, params) <= wtol)
                basep.coeff[k] = c;
            else
                tail.coeff[k] = c;
        }
        double bn = minkowski_functional(inst.cone.norm_f, basep);
        double tn = minkowski_functional(inst.cone.norm_f, tail);
        double tail_scale =
            cfg.t > 1.0 && tn > 0.0 ? 0.5 * std::sqrt(cfg.t * cfg.t - 1.0) * bn / tn : 0.0;
        TrigPoly f = trig_lincomb(1.0, basep, tail_scale, tail);
        TwoStepReport rep = run_two_step_report(inst.pilot, inst.family, inst.cone, eps, Element{f},
                                                identity, NormSpec::l2(), Element{trig_zero(cfg.d)});
        worst_ratio = std::max(worst_ratio, rep.residual_norm / eps);
        csv.add_row({eps, static_cast<double>(rep.m), static_cast<double>(rep.k),
                     rep.pilot_norm, rep.residual_norm, rep.bound_rhs});
    }
    claims.add("cone solver residual/eps ratio", 1.0, worst_ratio, worst_ratio <= 1.0);
}

struct ExperimentDef {
    ExperimentInfo info;
    std::vector<std::string> csv_header;
    void (*body)(const ExperimentConfig&, CsvWriter&, Claims&);
    std::string criterion;
};

const std::vector<ExperimentDef>& definitions() {
    static const std::vector<ExperimentDef> defs = {
        {{"kashin", "linear-optimal l1->l2 recovery from Hadamard rows (param: m)"},
         {"n", "exact_error", "sqrt_m_minus_n_over_m"},
         run_kashin,
         "criterion 5"},
        {{"kashin-bp", "basis pursuit vs the linear optimum on a seeded random matrix (needs n < m)"},
         {"trial", "l2_error"},
         run_kashin_bp,
         "criterion 5"},
        {{"bisection", "adaptive bisection vs the non-adaptive lower bound (param: n)"},
         {"n", "adaptive_error", "bound_2_pow_minus_n", "lower_bound_1_over_8n", "adversarial_gap"},
         run_bisection,
         "criterion 6"},
        {{"product", "block-norm allocation on the M-fold product space (m = blocks, n)"},
         {"trial", "sup_error", "bound_2_over_n_minus_M", "cost", "adversary_sup", "bound_M_over_2n"},
         run_product,
         "criterion 7"},
        {{"kurtosis", "bounded-kurtosis adversary norms (eps list, n = points)"},
         {"eps", "delta", "points", "l4_norm", "l2_norm", "implied_error"},
         run_kurtosis,
         "criterion 8"},
        {{"sobolev-cone", "two-step solver on the inverse-Poincare cone (eps list, t)"},
         {"eps", "cost", "residual_l2"},
         run_sobolev_cone,
         "criterion 9"},
        {{"rescaling", "information rescaling N_r shrinks matched gaps (seed)"},
         {"r", "max_matched_gap", "diam_proxy_over_r"},
         run_rescaling,
         "criterion 10"},
        {{"korobov", "CBC lattices and the pilot-cone solver (d, alpha, gamma, M, eps, t)"},
         {"eps", "pilot_cost", "stage2_cost", "pilot_norm", "residual_l2", "threshold"},
         run_korobov,
         "criterion 11"},
    };
    return defs;
}

const ExperimentDef& find_definition(const std::string& name) {
    for (const auto& def : definitions())
        if (def.info.name == name) return def;
    throw ConfigError("unknown experiment '" + name + "'");
}

}  // namespace

ExperimentConfig parse_config(const std::string& text) {
    ExperimentConfig cfg;
    bool seed_given = false;
    std::istringstream is(text);
    std::string raw;
    int line = 0;
    while (std::getline(is, raw)) {
        ++line;
        std::string s = raw;
        if (auto pos = s.find('#'); pos != std::string::npos) s = s.substr(0, pos);
        s = trim(s);
        if (s.empty()) continue;
        auto eq = s.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(line) + ": expected key = value");
        std::string key = trim(s.substr(0, eq));
        std::string val = trim(s.substr(eq + 1));
        if (val.empty()) throw ConfigError("line " + std::to_string(line) + ": empty value for '" + key + "'");
        auto as_double = [&](const char* name) {
            auto v = parse_double_list(val, line);
            if (v.size() != 1)
                throw ConfigError("line " + std::to_string(line) + ": '" + std::string(name) +
                                  "' takes a single number");
            return v[0];
        };
        auto as_int = [&](const char* name, long lo, long hi) {
            double v = as_double(name);
            if (v != std::floor(v) || v < static_cast<double>(lo) || v > static_cast<double>(hi))
                throw ConfigError("line " + std::to_string(line) + ": '" + std::string(name) +
                                  "' must be an integer in [" + std::to_string(lo) + ", " +
                                  std::to_string(hi) + "]");
            return static_cast<long>(v);
        };
        if (key == "experiment") {
            cfg.experiment = val;
        } else if (key == "eps") {
            cfg.eps = parse_double_list(val, line);
            for (double e : cfg.eps)
                if (!(e > 0.0)) throw ConfigError("line " + std::to_string(line) + ": 'eps' must be positive");
        } else if (key == "t") {
            cfg.t = as_double("t");
            if (!(cfg.t > 0.0)) throw ConfigError("line " + std::to_string(line) + ": 't' must be positive");
        } else if (key == "m") {
            cfg.m = static_cast<int>(as_int("m", 1, 1 << 20));
        } else if (key == "n") {
            cfg.n = static_cast<int>(as_int("n", 1, 1 << 20));
        } else if (key == "d") {
            cfg.d = static_cast<int>(as_int("d", 1, 16));
        } else if (key == "alpha") {
            cfg.alpha = as_double("alpha");
            if (!(cfg.alpha > 0.5))
                throw ConfigError("line " + std::to_string(line) + ": 'alpha' must exceed 1/2");
        } else if (key == "gamma") {
            cfg.gamma = parse_double_list(val, line);
            for (double gm : cfg.gamma)
                if (!(gm > 0.0 && gm <= 1.0))
                    throw ConfigError("line " + std::to_string(line) + ": 'gamma' entries must be in (0,1]");
        } else if (key == "M") {
            cfg.M = as_double("M");
            if (!(cfg.M >= 1.0)) throw ConfigError("line " + std::to_string(line) + ": 'M' must be >= 1");
        } else if (key == "N") {
            cfg.N = as_int("N", 0, 1000000000L);
        } else if (key == "seed") {
            cfg.seed = static_cast<std::uint64_t>(as_int("seed", 0, 1L << 62));
            seed_given = true;
        } else if (key == "out") {
            cfg.out = val;
        } else {
            throw ConfigError("line " + std::to_string(line) + ": unknown key '" + key + "'");
        }
    }
    if (cfg.experiment.empty()) throw ConfigError("missing 'experiment' key");
    find_definition(cfg.experiment);  // rejects unknown experiment names
    if (!seed_given) cfg.seed = 42;   // documented default, recorded in output
    return cfg;
}

const std::vector<ExperimentInfo>& experiment_catalog() {
    static const std::vector<ExperimentInfo> infos = [] {
        std::vector<ExperimentInfo> v;
        for (const auto& def : definitions()) v.push_back(def.info);
        return v;
    }();
    return infos;
}

ExperimentOutcome run_experiment(const ExperimentConfig& cfg) {
    const ExperimentDef& def = find_definition(cfg.experiment);

    std::filesystem::path out_dir = cfg.out;
    if (const char* env = std::getenv("IBC_OUT"); env && *env) out_dir = env;
    if (out_dir.empty()) out_dir = std::filesystem::path("out") / cfg.experiment;

    CsvWriter csv(def.csv_header);
    Claims claims;
    def.body(cfg, csv, claims);

    nlohmann::json summary;
    summary["experiment"] = cfg.experiment;
    summary["criterion"] = def.criterion;
    summary["seed"] = cfg.seed;
    summary["claims"] = claims.list;
    summary["all_pass"] = claims.all_pass;

    csv.save(out_dir / "results.csv");
    write_text(out_dir / "summary.json", summary.dump(2) + "\n");

    ExperimentOutcome outcome;
    outcome.all_pass = claims.all_pass;
    outcome.out_dir = out_dir;
    outcome.summary = std::move(summary);
    return outcome;
}

}  // namespace ibc
