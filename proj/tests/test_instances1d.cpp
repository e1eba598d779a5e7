#include "ibc/instances1d.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace ibc;

TEST_CASE("sobolev interpolation error bound 1/(pi n)") {
    CHECK(sobolev_error_bound(10) == doctest::Approx(1.0 / (10.0 * std::numbers::pi)));
    // interpolation reproduces piecewise-linear functions on its own grid
    PWLinear f = make_pwlinear({0.0, 0.5, 1.0}, {1.0, -1.0, 0.5});
    PWLinear g = sobolev_interp(f, 4);
    for (double x : {0.0, 0.1, 0.37, 0.5, 0.99})
        CHECK(g.eval(x) == doctest::Approx(f.eval(x)).epsilon(1e-14));
}

TEST_CASE("sobolev interpolation error stays below the certified bound") {
    // hat functions with known W12 norm probe the bound
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(0.1, 0.9);
    for (int trial = 0; trial < 20; ++trial) {
        double c = u(rng);
        PWLinear f = make_pwlinear({0.0, c, 1.0}, {0.0, 1.0, 0.0});
        double w12 = std::sqrt(f.norm_l2_sq() + f.deriv_l2_sq());
        for (int n : {4, 16, 64}) {
            PWLinear diff = pwl_lincomb(1.0, f, -1.0, sobolev_interp(f, n));
            CHECK(std::sqrt(diff.norm_l2_sq()) <= sobolev_error_bound(static_cast<std::size_t>(n)) * w12 + 1e-12);
        }
    }
}

TEST_CASE("integral post-processor is within the L2 residual") {
    SobolevInstance inst = sobolev_instance(1.0);
    PWLinear f = make_pwlinear({0.0, 0.3, 1.0}, {1.0, 1.2, 0.95});
    REQUIRE(cone_contains(f, inst.cone, 1e-12));
    AdaptiveAlgorithm alg = sobolev_cone_solver(1e-3, 1.0);
    auto [out, cost] = run_algorithm(alg, Element{f});
    double resid = element_distance(NormSpec::l2(), Element{f}, out);
    CHECK(std::abs(f.integral() - integral_of_output(out)) <= resid + 1e-12);
    CHECK(resid <= 1e-3);
}

TEST_CASE("bisection locates the hidden point and its cost") {
    // f(x) = x: z solves f(z) = (f(0)+f(1/2))/2, so z = 1/4 and S(f) = 3/4
    PWLinear f = make_pwlinear({0.0, 0.4, 1.0}, {0.0, 0.4, 1.0});
    CHECK(bisection_limit(f) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(bisection_solution(f) == doctest::Approx(0.75).epsilon(1e-12));
    for (int n : {2, 10, 30}) {
        BisectionResult res = bisection_z(f, n);
        CHECK(std::abs(res.z - 0.25) <= std::pow(2.0, -n));
        CHECK(res.cost == static_cast<std::size_t>(n) + 1);
        auto [out, cost] = run_algorithm(bisection_algorithm(n), Element{f});
        CHECK(cost.n() == static_cast<std::size_t>(n) + 1);
        CHECK(std::abs(std::get<VectorElem>(out).v[0].real() - 0.75) <= std::pow(2.0, -n));
    }
}

TEST_CASE("bisection adversarial pair: exact node agreement and 1/(4n) gap") {
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int n : {3, 7, 12}) {
        std::vector<double> nodes;
        for (int j = 0; j < n; ++j) nodes.push_back(u(rng));
        BisectionAdversarialPair pair = bisection_adversarial_pair(nodes, n);
        for (double x : nodes) CHECK(pair.f.eval(x) == pair.g.eval(x));
        CHECK(std::abs(pair.sf - pair.sg) == doctest::Approx(1.0 / (4.0 * n)).epsilon(1e-13));
        CHECK(pair.f.norm_lip() <= 1.0 + 1e-12);
        CHECK(pair.g.norm_lip() <= 1.0 + 1e-12);
        CHECK(bisection_solution(pair.f) == doctest::Approx(pair.sf).epsilon(1e-10));
        CHECK(bisection_solution(pair.g) == doctest::Approx(pair.sg).epsilon(1e-10));
    }
}

TEST_CASE("step function sup distance is exact at cell endpoints") {
    StepFunction s{{0.0, 0.5, 1.0}, {0.0, 1.0}};
    PWLinear f = make_pwlinear({0.0, 1.0}, {0.0, 1.0});
    // on [0,0.5): |x - 0| sup -> 0.5 at x->0.5; on [0.5,1]: |x-1| sup 0.5
    CHECK(sup_error_pwl_step(f, s) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(s.eval(0.25) == 0.0);
    CHECK(s.eval(0.75) == 1.0);
}

TEST_CASE("product adaptive: certified error, cost, and adversary") {
    const int n = 24, M = 3;
    BlockElem f;
    f.blocks.push_back(make_pwlinear({0.0, 0.5, 1.0}, {0.0, 0.25, 0.1}));
    f.blocks.push_back(pwl_constant(0.01));
    f.blocks.push_back(make_pwlinear({0.0, 1.0}, {0.2, -0.2}));
    ProductResult res = product_adaptive(f, n, M);
    CHECK(res.cost <= static_cast<std::size_t>(n));
    CHECK(res.sup_error <= 2.0 / (n - M) + 1e-12);
    // tiny block gets no samples
    CHECK(res.allocation[1] == 0);

    BlockElem adv = product_adversarial(res.allocation, M, n);
    double sup = 0.0;
    for (const auto& blk : adv.blocks) sup = std::max(sup, blk.norm_linf());
    CHECK(sup >= static_cast<double>(M) / (2.0 * n) - 1e-12);
    for (int b = 0; b < M; ++b)
        for (double x : midpoint_nodes(res.allocation[static_cast<std::size_t>(b)]))
            CHECK(adv.blocks[static_cast<std::size_t>(b)].eval(x) == 0.0);
}

TEST_CASE("kurtosis adversary: exact norm certificates") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> pts;
    for (int j = 0; j < 25; ++j) pts.push_back(u(rng));
    const double eps = 0.05, delta = 0.2;
    PWLinear f = kurtosis_adversarial(pts, eps, delta);
    CHECK(std::pow(f.norm_l4_p4(), 0.25) <= 4.0 * eps * (1.0 + 1e-12));
    CHECK(std::sqrt(f.norm_l2_sq()) >= 4.0 * eps * std::sqrt(1.0 - delta) * (1.0 - 1e-12));
    for (double p : pts) CHECK(f.eval(p) == 0.0);
    CHECK(f.norm_linf() <= 4.0 * eps + 1e-15);
}
