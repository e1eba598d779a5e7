#include "ibc/instances1d.hpp"
#include "ibc/sampling.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace ibc;

TEST_CASE("cone membership via exact norms") {
    ConeSpec cone;
    cone.T = [](const Element& f) { return f; };
    cone.norm_f = NormSpec::w12();
    cone.norm_h = NormSpec::l2();
    cone.t = std::sqrt(2.0);  // ||f'||_2 <= ||f||_2

    CHECK(cone_contains(pwl_constant(0.0), cone));
    CHECK(cone_contains(pwl_constant(3.0), cone));
    // sawtooth with slope 40: ||f'||/||f|| far above 1
    std::vector<double> x, v;
    for (int j = 0; j <= 20; ++j) {
        x.push_back(j / 20.0);
        v.push_back(j % 2 ? 1.0 : -1.0);
    }
    CHECK_FALSE(cone_contains(make_pwlinear(x, v), cone));
}

TEST_CASE("cone membership is invariant under positive scaling") {
    SobolevInstance inst = sobolev_instance(2.0);
    PWLinear f = make_pwlinear({0.0, 0.5, 1.0}, {1.0, 1.3, 0.9});
    REQUIRE(cone_contains(f, inst.cone, 1e-12));
    for (double lam : {0.25, 4.0, 1e3})
        CHECK(cone_contains(pwl_scale(f, lam), inst.cone, 1e-12));
}

TEST_CASE("required cardinality inverts the certified error bound") {
    auto e = [](std::size_t k) { return 1.0 / static_cast<double>(k); };
    CHECK(required_cardinality(1.0, 1.0, 0.5, e) == 1);  // threshold 1
    // e(k) = 1/(pi k), eps=0.1, t=2, norm=1 -> k = ceil(40/pi) = 13
    auto ep = [](std::size_t k) { return 1.0 / (std::numbers::pi * static_cast<double>(k)); };
    CHECK(required_cardinality(0.1, 2.0, 1.0, ep) == 13);
    // minimality: e(k-1) violates the threshold
    std::size_t k = required_cardinality(1e-3, 2.0, 1.7, ep);
    double thr = 1e-3 / (2.0 * 2.0 * 1.7);
    CHECK(ep(k) <= thr);
    CHECK(ep(k - 1) > thr);
    CHECK_THROWS_AS(required_cardinality(1e-9, 1.0, 1.0, e, 1, 100), UnsolvableAtCap);
    CHECK_THROWS_AS(required_cardinality(-1.0, 1.0, 1.0, e), std::invalid_argument);
}

TEST_CASE("two-step algorithm: zero branch, residual bound, cost accounting") {
    SobolevInstance inst = sobolev_instance(2.0);
    const double eps = 1e-2;
    AdaptiveAlgorithm alg = sobolev_cone_solver(eps, 2.0);

    auto [zout, zcost] = run_algorithm(alg, Element{pwl_constant(0.0)});
    CHECK(is_zero_element(zout, 0.0));
    CHECK(zcost.n() == inst.pilot.m);

    PWLinear f = make_pwlinear({0.0, 0.25, 0.6, 1.0}, {1.0, 1.2, 0.8, 1.1});
    REQUIRE(cone_contains(f, inst.cone, 1e-12));
    auto identity = [](const Element& g) { return g; };
    TwoStepReport rep = run_two_step_report(inst.pilot, inst.family, inst.cone, eps, Element{f},
                                            identity, NormSpec::l2(), Element{pwl_constant(0.0)});
    CHECK(rep.residual_norm <= eps);
    CHECK(rep.m == inst.pilot.m);
    // k is minimal for the certified error bound
    std::size_t k = required_cardinality(eps, inst.cone.t, rep.pilot_norm, inst.family.error_bound,
                                         inst.family.k_min);
    CHECK(inst.family.error_bound(k) <= rep.bound_rhs);
    if (k > inst.family.k_min) CHECK(inst.family.error_bound(k - 1) > rep.bound_rhs);
    // pilot reads at most 3/2 of the true T-norm (here T = identity into L2)
    CHECK(rep.pilot_norm <= 1.5 * std::sqrt(f.norm_l2_sq()) + 1e-12);
}

TEST_CASE("two-step rejects pilots with too-large ball error") {
    PilotAlgorithm pilot;
    pilot.alg.info = make_nonadaptive({PointEval{{0.5}}});
    pilot.alg.recovery = [](const Data& d) -> Element { return pwl_constant(d[0].real()); };
    pilot.m = 1;
    pilot.ball_error = 1.0;  // needs <= 1/(2t) = 0.25
    ConeSpec cone;
    cone.T = [](const Element& f) { return f; };
    cone.t = 2.0;
    SolverFamily fam;
    fam.build = [](std::size_t) { return AdaptiveAlgorithm{}; };
    fam.error_bound = [](std::size_t k) { return 1.0 / static_cast<double>(k); };
    CHECK_THROWS_AS(two_step_algorithm(pilot, fam, cone, 0.1, pwl_constant(0.0)),
                    std::invalid_argument);
}

TEST_CASE("rescaled information composes: (N_r)_s acts like N_rs") {
    Eigen::VectorXcd a(2), b(2), mix(2);
    a << 1.0, 2.0;
    b << -1.0, 0.5;
    mix << 0.3, -0.7;
    InformationMap info;
    info.select = [=](std::size_t j, const Data& prior) -> Measurement {
        if (j == 1) return LinearFunctional{a};
        return LinearFunctional{(b + prior[0].real() * mix).eval()};
    };
    info.stop = [](const Data& d) { return d.size() >= 2; };

    InformationMap n6 = rescale_information(info, 6.0);
    InformationMap n23 = rescale_information(rescale_information(info, 2.0), 3.0);
    std::mt19937_64 rng(21);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int i = 0; i < 20; ++i) {
        Eigen::VectorXcd f(2);
        f << g(rng), g(rng);
        Data d1 = run_information(n6, Element{VectorElem{f, true}}).first;
        Data d2 = run_information(n23, Element{VectorElem{f, true}}).first;
        REQUIRE(d1.size() == d2.size());
        for (std::size_t j = 0; j < d1.size(); ++j) CHECK(std::abs(d1[j] - d2[j]) < 1e-12);
    }
    CHECK_THROWS_AS(rescale_information(info, 0.0), std::invalid_argument);
}

TEST_CASE("unsolvability demo scales a seed pair to any error level") {
    SobolevInstance inst = sobolev_instance(2.0);
    InputSetSpec set = InputSetSpec::cone_set(inst.cone);
    auto info = make_nonadaptive({PointEval{{0.0}}, PointEval{{0.5}}, PointEval{{1.0}}});
    auto S = [](const Element& f) { return f; };
    // seed: constant 1 versus a tent agreeing at the nodes (both in the cone)
    auto seeds = [](const std::vector<Measurement>&)
        -> std::optional<std::pair<Element, Element>> {
        PWLinear f = pwl_constant(1.0);
        PWLinear g = make_pwlinear({0.0, 0.25, 0.5, 0.75, 1.0}, {1.0, 1.1, 1.0, 1.1, 1.0});
        return std::make_pair(Element{f}, Element{g});
    };
    auto rep = fixed_cardinality_unsolvability_demo(set, info, S, NormSpec::l2(), seeds,
                                                    {1.0, 10.0});
    REQUIRE(rep.conclusive);
    CHECK(rep.seed_gap > 0.0);
    for (const auto& lvl : rep.levels) CHECK(lvl.gap >= 2.0 * lvl.epsilon - 1e-12);

    InputSetSpec ball = InputSetSpec::ball(1.0, NormSpec::l2());
    CHECK_THROWS_AS(
        fixed_cardinality_unsolvability_demo(ball, info, S, NormSpec::l2(), seeds, {1.0}),
        std::invalid_argument);
}

TEST_CASE("worst case sampled error is deterministic and respects the set") {
    AdaptiveAlgorithm alg;
    alg.info = make_nonadaptive({PointEval{{0.5}}});
    alg.recovery = [](const Data& d) -> Element { return pwl_constant(d[0].real()); };
    auto S = [](const Element& f) { return f; };
    InputSetSpec set = InputSetSpec::ball(1.0, NormSpec::linf());
    auto sampler = [](std::uint64_t trial) -> Element {
        std::mt19937_64 rng(trial * 77 + 1);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        return make_pwlinear({0.0, 0.5, 1.0}, {u(rng), u(rng), u(rng)});
    };
    SampledError a = worst_case_error_sampled(alg, S, NormSpec::l2(), set, sampler, 64);
    SampledError b = worst_case_error_sampled(alg, S, NormSpec::l2(), set, sampler, 64);
    CHECK(a.value == b.value);
    CHECK(a.rejected == 0);
    CHECK(a.value > 0.0);
}
