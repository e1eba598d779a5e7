#include "ibc/instances1d.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace ibc {

namespace {

AdaptiveAlgorithm interp_algorithm(std::size_t k) {
    // k point evaluations at the nodes j/(k-1), piecewise-linear recovery
    if (k < 2) throw std::invalid_argument("interp algorithm: need k >= 2");
    const std::size_t n = k - 1;
    std::vector<Measurement> ms;
    ms.reserve(k);
    for (std::size_t j = 0; j < k; ++j)
        ms.push_back(PointEval{{static_cast<double>(j) / static_cast<double>(n)}});
    AdaptiveAlgorithm alg;
    alg.info = make_nonadaptive(std::move(ms));
    alg.recovery = [n](const Data& data) -> Element {
        std::vector<double> x(n + 1), v(n + 1);
        for (std::size_t j = 0; j <= n; ++j) {
            x[j] = static_cast<double>(j) / static_cast<double>(n);
            v[j] = data[j].real();
        }
        return make_pwlinear(std::move(x), std::move(v));
    };
    return alg;
}

}  // namespace

PWLinear sobolev_interp(const PWLinear& f, int n) {
    if (n < 1) throw std::invalid_argument("sobolev_interp: n >= 1");
    std::vector<double> x(static_cast<std::size_t>(n) + 1), v(static_cast<std::size_t>(n) + 1);
    for (int j = 0; j <= n; ++j) {
        x[static_cast<std::size_t>(j)] = static_cast<double>(j) / n;
        v[static_cast<std::size_t>(j)] = f.eval(x[static_cast<std::size_t>(j)]);
    }
    return make_pwlinear(std::move(x), std::move(v));
}

double sobolev_error_bound(std::size_t n_intervals) {
    return 1.0 / (std::numbers::pi * static_cast<double>(n_intervals));
}

SobolevInstance sobolev_instance(double t) {
    if (!(t > 0.0)) throw std::invalid_argument("sobolev_instance: t > 0");
    SobolevInstance inst;
    inst.t_inflated = std::sqrt(1.0 + t * t);

    inst.cone.T = [](const Element& f) { return f; };
    inst.cone.norm_f = NormSpec::w12();
    inst.cone.norm_h = NormSpec::l2();
    inst.cone.t = inst.t_inflated;

    const auto n_pilot =
        static_cast<std::size_t>(std::ceil(2.0 * inst.t_inflated / std::numbers::pi));
    inst.pilot.alg = interp_algorithm(n_pilot + 1);
    inst.pilot.m = n_pilot + 1;
    inst.pilot.ball_error = sobolev_error_bound(n_pilot);

    inst.family.build = interp_algorithm;
    inst.family.error_bound = [](std::size_t k) { return sobolev_error_bound(k - 1); };
    inst.family.k_min = 2;
    return inst;
}

AdaptiveAlgorithm sobolev_cone_solver(double eps, double t) {
    SobolevInstance inst = sobolev_instance(t);
    return two_step_algorithm(inst.pilot, inst.family, inst.cone, eps, pwl_constant(0.0));
}

double integral_of_output(const Element& out) { return std::get<PWLinear>(out).integral(); }

namespace {

struct BisectState {
    double a = 0.0, b = 0.5;
    double target = 0.0;
    double sa = 0.0;  // f(a) - target of the active left endpoint
};

// Re-derives the bisection interval from the evaluation history
// (f(0), f(1/2), midpoint values...). Tie rule: keep the left interval.
BisectState replay_bisection(const double* vals, std::size_t count) {
    BisectState s;
    s.target = 0.5 * (vals[0] + vals[1]);
    s.sa = vals[0] - s.target;
    for (std::size_t i = 2; i < count; ++i) {
        double mid = 0.5 * (s.a + s.b);
        double sm = vals[i] - s.target;
        if (s.sa == 0.0 || sm == 0.0 || (sm > 0.0) != (s.sa > 0.0)) {
            s.b = mid;
        } else {
            s.a = mid;
            s.sa = sm;
        }
    }
    return s;
}

double run_bisection(const PWLinear& f, int steps) {
    std::vector<double> vals{f.eval(0.0), f.eval(0.5)};
    vals.reserve(static_cast<std::size_t>(steps) + 2);
    BisectState s = replay_bisection(vals.data(), 2);
    for (int i = 0; i < steps; ++i) {
        double mid = 0.5 * (s.a + s.b);
        vals.push_back(f.eval(mid));
        s = replay_bisection(vals.data(), vals.size());
        if (s.a == s.b) break;
    }
    return 0.5 * (s.a + s.b);
}

PWLinear dedup_pwlinear(std::vector<double> x, std::vector<double> v) {
    std::vector<double> xd, vd;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!xd.empty() && x[i] == xd.back()) continue;
        xd.push_back(x[i]);
        vd.push_back(v[i]);
    }
    return make_pwlinear(std::move(xd), std::move(vd));
}

}  // namespace

BisectionResult bisection_z(const PWLinear& f, int n) {
    if (n < 0) throw std::invalid_argument("bisection_z: n >= 0");
    if (n == 0) {
        f.eval(0.0);
        return {0.25, 1};
    }
    return {run_bisection(f, n - 1), static_cast<std::size_t>(n) + 1};
}

double bisection_limit(const PWLinear& f) { return run_bisection(f, 100); }

double bisection_solution(const PWLinear& f) { return f.eval(bisection_limit(f) + 0.5); }

AdaptiveAlgorithm bisection_algorithm(int n) {
    if (n < 2) throw std::invalid_argument("bisection_algorithm: n >= 2");
    const std::size_t total = static_cast<std::size_t>(n) + 1;
    AdaptiveAlgorithm alg;
    alg.info.select = [total](std::size_t j, const Data& prior) -> Measurement {
        if (j == 1) return PointEval{{0.0}};
        if (j == 2) return PointEval{{0.5}};
        std::vector<double> vals(prior.size());
        for (std::size_t i = 0; i < prior.size(); ++i) vals[i] = prior[i].real();
        BisectState s = replay_bisection(vals.data(), vals.size());
        double mid = 0.5 * (s.a + s.b);
        if (j < total) return PointEval{{mid}};
        return PointEval{{mid + 0.5}};  // final evaluation at z_est + 1/2
    };
    alg.info.stop = [total](const Data& data) { return data.size() >= total; };
    alg.recovery = [](const Data& data) -> Element {
        Eigen::VectorXcd out(1);
        out[0] = data.back();
        return VectorElem{out, true};
    };
    return alg;
}

BisectionAdversarialPair bisection_adversarial_pair(const std::vector<double>& nodes, int n) {
    if (n < 1 || static_cast<int>(nodes.size()) != n)
        throw std::invalid_argument("bisection_adversarial_pair: |nodes| = n >= 1");
    const double len = 1.0 / (2.0 * n);
    const double q = 1.0 / (4.0 * n);

    std::vector<double> cands{0.0};
    for (double x : nodes)
        if (x >= 0.0 && x <= 0.5) cands.push_back(x);
    std::sort(cands.begin(), cands.end());
    double a = -1.0;
    for (double c : cands) {
        if (c > 0.5 - len + 1e-15) continue;
        bool free_gap = true;
        for (double x : nodes)
            if (x > c && x < c + len) {
                free_gap = false;
                break;
            }
        if (free_gap) {
            a = c;
            break;
        }
    }
    if (a < 0.0)
        throw std::logic_error("bisection_adversarial_pair: no node-free interval of length 1/(2n)");

    BisectionAdversarialPair pair;
    pair.a = a;
    pair.f = dedup_pwlinear({0.0, a, a + q, 0.5, 1.0}, {0.0, 0.0, q, q, q + 0.5});
    pair.g = dedup_pwlinear({0.0, a + q, a + 2.0 * q, 0.5, 1.0}, {0.0, 0.0, q, q, q + 0.5});
    pair.sf = a + 1.5 * q;  // f(z(f) + 1/2) with z(f) = a + q/2
    pair.sg = a + 2.5 * q;  // g(z(g) + 1/2) with z(g) = a + 3q/2
    return pair;
}

double StepFunction::eval(double x) const {
    if (edges.size() < 2 || values.size() + 1 != edges.size())
        throw std::invalid_argument("step function: inconsistent sizes");
    auto it = std::upper_bound(edges.begin(), edges.end(), x);
    std::size_t i = it == edges.begin() ? 0 : static_cast<std::size_t>(it - edges.begin()) - 1;
    if (i >= values.size()) i = values.size() - 1;
    return values[i];
}

double sup_error_pwl_step(const PWLinear& f, const StepFunction& s) {
    double worst = 0.0;
    for (std::size_t i = 0; i + 1 < s.edges.size(); ++i) {
        const double lo = s.edges[i], hi = s.edges[i + 1], c = s.values[i];
        worst = std::max(worst, std::abs(f.eval(lo) - c));
        worst = std::max(worst, std::abs(f.eval(hi) - c));
        for (std::size_t j = 0; j < f.x.size(); ++j)
            if (f.x[j] > lo && f.x[j] < hi) worst = std::max(worst, std::abs(f.v[j] - c));
    }
    return worst;
}

std::vector<double> midpoint_nodes(std::size_t m) {
    std::vector<double> nodes(m);
    for (std::size_t j = 0; j < m; ++j)
        nodes[j] = (2.0 * static_cast<double>(j) + 1.0) / (2.0 * static_cast<double>(m));
    return nodes;
}

ProductResult product_adaptive(const BlockElem& f, int n, int M) {
    if (M < 1 || n <= M) throw std::invalid_argument("product_adaptive: need n > M >= 1");
    if (static_cast<int>(f.blocks.size()) != M)
        throw std::invalid_argument("product_adaptive: block count mismatch");
    const double threshold = 2.0 / (n - M);

    ProductResult res;
    res.cost = static_cast<std::size_t>(M);  // the M norm measurements
    for (const PWLinear& fi : f.blocks) {
        double norm = fi.norm_lip();
        std::size_t mi =
            norm < threshold ? 0 : static_cast<std::size_t>(std::ceil(norm * (n - M) / 2.0));
        res.allocation.push_back(mi);
        res.cost += mi;
        StepFunction s;
        if (mi == 0) {
            s.edges = {0.0, 1.0};
            s.values = {0.0};
        } else {
            for (std::size_t j = 0; j <= mi; ++j)
                s.edges.push_back(static_cast<double>(j) / static_cast<double>(mi));
            for (double node : midpoint_nodes(mi)) s.values.push_back(fi.eval(node));
        }
        res.sup_error = std::max(res.sup_error, sup_error_pwl_step(fi, s));
        res.approx.push_back(std::move(s));
    }
    return res;
}

BlockElem product_adversarial(const std::vector<std::size_t>& allocation, int M, int n) {
    if (M < 1 || n < 1 || static_cast<int>(allocation.size()) != M)
        throw std::invalid_argument("product_adversarial: bad sizes");
    int block = -1;
    for (int i = 0; i < M; ++i)
        if (static_cast<double>(allocation[static_cast<std::size_t>(i)]) * M <= n) {
            block = i;
            break;
        }
    if (block < 0)
        throw std::invalid_argument("product_adversarial: every block has more than n/M samples");

    const std::size_t m = allocation[static_cast<std::size_t>(block)];
    PWLinear fstar;
    if (m == 0) {
        fstar = make_pwlinear({0.0, 0.5, 1.0}, {0.0, 0.5, 0.0});
    } else {
        // slope +-1 tent between the sample nodes, vanishing exactly at them
        std::vector<double> nodes = midpoint_nodes(m);
        std::vector<double> x{0.0}, v{nodes.front()};
        for (std::size_t j = 0; j < m; ++j) {
            x.push_back(nodes[j]);
            v.push_back(0.0);
            if (j + 1 < m) {
                x.push_back(0.5 * (nodes[j] + nodes[j + 1]));
                v.push_back(0.5 * (nodes[j + 1] - nodes[j]));
            }
        }
        x.push_back(1.0);
        v.push_back(1.0 - nodes.back());
        fstar = make_pwlinear(std::move(x), std::move(v));
    }

    BlockElem out;
    for (int i = 0; i < M; ++i)
        out.blocks.push_back(i == block ? fstar : pwl_constant(0.0));
    return out;
}

PWLinear kurtosis_adversarial(const std::vector<double>& points, double eps, double delta) {
    if (!(eps > 0.0) || !(delta > 0.0) || !(delta < 1.0))
        throw std::invalid_argument("kurtosis_adversarial: need eps > 0 and 0 < delta < 1");
    for (double p : points)
        if (!(p >= 0.0 && p <= 1.0))
            throw std::invalid_argument("kurtosis_adversarial: points must lie in [0,1]");

    const double h = 4.0 * eps;
    const double w = delta / (2.0 * (static_cast<double>(points.size()) + 2.0));

    std::vector<double> centers{0.0, 1.0};
    centers.insert(centers.end(), points.begin(), points.end());
    std::sort(centers.begin(), centers.end());
    centers.erase(std::unique(centers.begin(), centers.end()), centers.end());

    std::vector<double> xs{0.0, 1.0};
    for (std::size_t i = 0; i < centers.size(); ++i) {
        for (double cand : {centers[i] - w, centers[i], centers[i] + w})
            if (cand > 0.0 && cand < 1.0) xs.push_back(cand);
        if (i + 1 < centers.size()) xs.push_back(0.5 * (centers[i] + centers[i + 1]));
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

    auto value = [&](double x) {
        double dmin = 1.0;
        for (double c : centers) dmin = std::min(dmin, std::abs(x - c));
        // breakpoints at c +- w land within rounding of the plateau edge;
        // snap them so plateau segments keep exactly the value h
        if (dmin >= w * (1.0 - 1e-9)) return h;
        return h * dmin / w;
    };
    std::vector<double> vs(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) vs[i] = value(xs[i]);
    PWLinear f = make_pwlinear(xs, vs);

    double plateau = 0.0;  // exact: f is linear between breakpoints
    for (std::size_t i = 0; i + 1 < f.x.size(); ++i)
        if (f.v[i] == h && f.v[i + 1] == h) plateau += f.x[i + 1] - f.x[i];
    if (plateau < 1.0 - delta - 1e-12)
        throw std::runtime_error("kurtosis_adversarial: valley budget infeasible for delta");
    return f;
}

}  // namespace ibc
