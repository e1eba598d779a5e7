#include "ibc/korobov.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

using namespace ibc;

namespace {

// box-scan oracle: enumerate a cube large enough to cover the weight bound
std::vector<std::vector<int>> box_scan(double M, const KorobovParams& params) {
    int B = static_cast<int>(std::ceil(std::pow(M / *std::min_element(params.gamma.begin(),
                                                                      params.gamma.end()),
                                                1.0 / (2.0 * params.alpha)))) +
            1;
    std::vector<std::vector<int>> out;
    std::vector<int> k(static_cast<std::size_t>(params.d), -B);
    while (true) {
        if (korobov_weight(k, params) <= M * (1.0 + 1e-12)) out.push_back(k);
        int j = 0;
        for (; j < params.d; ++j) {
            if (++k[static_cast<std::size_t>(j)] <= B) break;
            k[static_cast<std::size_t>(j)] = -B;
        }
        if (j == params.d) break;
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_CASE("index set matches the box-scan oracle") {
    for (double M : {1.0, 5.0, 37.5, 100.0}) {
        KorobovParams p1{1.0, {1.0}, 1};
        CHECK(index_set(M, p1) == box_scan(M, p1));
        KorobovParams p2{1.5, {1.0, 0.5}, 2};
        CHECK(index_set(M, p2) == box_scan(M, p2));
        KorobovParams p3{0.75, {1.0, 0.5, 0.25}, 3};
        CHECK(index_set(M, p3) == box_scan(M, p3));
    }
    KorobovParams p{1.0, {1.0}, 1};
    CHECK_THROWS_AS(index_set(0.5, p), std::invalid_argument);
}

TEST_CASE("lattice estimator recovers coefficients modulo aliasing") {
    Lattice lat{7, {1, 3}};
    TrigPoly f{2, {}};
    f.coeff[{1, 0}] = Scalar(2.0, -1.0);
    f.coeff[{0, 1}] = Scalar(0.5, 0.5);
    std::vector<Scalar> samples;
    for (const auto& x : lattice_nodes(lat)) samples.push_back(f.eval(x));
    // k.g distinct mod 7 for these two modes: exact recovery
    CHECK(std::abs(lattice_coeff_estimate(samples, lat, {1, 0}) - f.coeff[{1, 0}]) < 1e-12);
    CHECK(std::abs(lattice_coeff_estimate(samples, lat, {0, 1}) - f.coeff[{0, 1}]) < 1e-12);
    // aliasing identity: k and k + N e_1 share the estimate
    CHECK(std::abs(lattice_coeff_estimate(samples, lat, {1, 0}) -
                   lattice_coeff_estimate(samples, lat, {8, 0})) < 1e-12);
}

TEST_CASE("cbc matches the exhaustive search at d=2") {
    KorobovParams params{1.0, {1.0, 0.5}, 2};
    const double M = 8.0;
    auto A = index_set(M, params);
    for (long N : {13L, 29L, 53L, 101L}) {
        CbcResult res = cbc_generating_vector(N, params, M);
        // oracle: best full vector with g1 fixed to the CBC choice
        long best = -1;
        for (long z = 1; z < N; ++z) {
            long c = collision_count(A, {res.g[0], z}, N);
            if (best < 0 || c < best) best = c;
        }
        CHECK(res.collisions == best);
        CHECK(collision_count(A, res.g, N) == res.collisions);
    }
    CHECK_THROWS_AS(cbc_generating_vector(10, params, M), std::invalid_argument);
}

TEST_CASE("cbc serial and OpenMP scans agree") {
    KorobovParams params{1.0, {1.0, 0.5}, 2};
    CbcResult a = cbc_generating_vector(211, params, 12.0, true);
    CbcResult b = cbc_generating_vector(211, params, 12.0, false);
    CHECK(a.g == b.g);
    CHECK(a.collisions == b.collisions);
}

TEST_CASE("prime helpers") {
    CHECK(is_prime(2));
    CHECK(is_prime(257));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(255));
    CHECK(next_prime(14) == 17);
    CHECK(next_prime(17) == 17);
}

TEST_CASE("reconstruction lattice is alias-free on the target") {
    KorobovParams params{1.0, {1.0, 0.5}, 2};
    auto target = index_set(6.0, params);
    auto universe = index_set(40.0, params);
    Lattice lat = find_reconstruction_lattice(target, universe, 42);
    // every universe mode must reproduce exactly through the estimator
    std::mt19937_64 rng(5);
    std::normal_distribution<double> g(0.0, 1.0);
    TrigPoly f{2, {}};
    for (const auto& k : universe) f.coeff[k] = Scalar(g(rng), g(rng));
    std::vector<Scalar> samples;
    for (const auto& x : lattice_nodes(lat)) samples.push_back(f.eval(x));
    for (const auto& k : target)
        CHECK(std::abs(lattice_coeff_estimate(samples, lat, k) - f.coeff[k]) < 1e-9);
    // determinism
    Lattice lat2 = find_reconstruction_lattice(target, universe, 42);
    CHECK(lat.N == lat2.N);
    CHECK(lat.g == lat2.g);
}

TEST_CASE("least squares matches the pseudoinverse oracle and validates") {
    KorobovParams params{1.0, {1.0, 0.5}, 2};
    auto freqs = index_set(5.0, params);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::normal_distribution<double> g(0.0, 1.0);
    TrigPoly truth{2, {}};
    for (const auto& k : freqs) truth.coeff[k] = Scalar(g(rng), g(rng));
    std::vector<std::vector<double>> pts(2 * freqs.size(), std::vector<double>(2));
    for (auto& x : pts) {
        x[0] = u(rng);
        x[1] = u(rng);
    }
    std::vector<Scalar> samples;
    for (const auto& x : pts) samples.push_back(truth.eval(x));
    TrigPoly fit = least_squares_fit(pts, samples, freqs);
    for (const auto& k : freqs) CHECK(std::abs(fit.coeff[k] - truth.coeff[k]) < 1e-9);
    CHECK_THROWS(least_squares_fit({{0.1, 0.2}}, {Scalar(1.0)}, freqs));  // too few points
}

TEST_CASE("single-mode tail weight") {
    KorobovParams p1{1.0, {1.0}, 1};
    // weights are k^2: smallest above 10 is 16
    CHECK(tail_min_weight_above(10.0, p1) == doctest::Approx(16.0));
    KorobovParams p2{1.0, {1.0, 0.5}, 2};
    // candidates above 4: |k1|=3 -> 9; (1,1): 1*2=2; (2,1): 4*2=8; (1,2): 8; min > 4 is 8
    CHECK(tail_min_weight_above(4.0, p2) == doctest::Approx(8.0));
}

TEST_CASE("korobov instance: pilot exactness and certified family bound") {
    KorobovParams params{1.0, {1.0}, 1};
    KorobovInstance inst = korobov_instance(2.0, 4.0, params, KorobovEstimator::Lattice, 64.0, 42);
    CHECK(inst.pilot.ball_error == 0.0);
    // e is nonincreasing in the level index
    for (std::size_t k = 1; k < inst.levels.size(); ++k)
        CHECK(inst.family.error_bound(k + 1) <= inst.family.error_bound(k));
    // pilot reproduces the projection of a certified-class member exactly
    std::mt19937_64 rng(9);
    std::normal_distribution<double> g(0.0, 1.0);
    TrigPoly f{1, {}};
    for (int k = -8; k <= 8; ++k) f.coeff[{k}] = Scalar(g(rng), g(rng));
    auto [q, cost] = run_algorithm(inst.pilot.alg, Element{f});
    const auto& qp = std::get<TrigPoly>(q);
    for (int k = -2; k <= 2; ++k)
        CHECK(std::abs(qp.coeff.at({k}) - f.coeff[{k}]) < 1e-10);
    CHECK(cost.n() == inst.pilot.m);
}

TEST_CASE("korobov least-squares family carries the factor-2 margin") {
    KorobovParams params{1.0, {1.0}, 1};
    KorobovInstance lat = korobov_instance(2.0, 4.0, params, KorobovEstimator::Lattice, 64.0, 42);
    KorobovInstance ls =
        korobov_instance(2.0, 4.0, params, KorobovEstimator::LeastSquares, 64.0, 42);
    for (std::size_t k : {std::size_t{1}, std::size_t{2}, std::size_t{3}})
        CHECK(ls.family.error_bound(k) == doctest::Approx(2.0 * lat.family.error_bound(k)));
}

TEST_CASE("korobov cone solver meets eps on members with tails") {
    KorobovParams params{1.0, {1.0}, 1};
    const double t = 2.0;
    KorobovInstance inst = korobov_instance(t, 4.0, params, KorobovEstimator::Lattice, 64.0, 42);
    std::mt19937_64 rng(11);
    std::normal_distribution<double> g(0.0, 1.0);
    auto identity = [](const Element& f) { return f; };
    for (double eps : {0.1, 0.01}) {
        TrigPoly base{1, {}}, tail{1, {}};
        for (int k = -2; k <= 2; ++k) base.coeff[{k}] = Scalar(g(rng), g(rng));
        for (int k = 3; k <= 8; ++k) tail.coeff[{k}] = Scalar(g(rng), g(rng));
        double bn = minkowski_functional(inst.cone.norm_f, base);
        double tn = minkowski_functional(inst.cone.norm_f, tail);
        TrigPoly f = trig_lincomb(1.0, base, 0.5 * std::sqrt(t * t - 1.0) * bn / tn, tail);
        REQUIRE(cone_contains(f, inst.cone, 1e-12));
        TwoStepReport rep = run_two_step_report(inst.pilot, inst.family, inst.cone, eps, Element{f},
                                                identity, NormSpec::l2(), Element{trig_zero(1)});
        CHECK(rep.residual_norm <= eps);
        CHECK(rep.pilot_norm > 0.0);
    }
    // pilot-zero branch
    AdaptiveAlgorithm alg = korobov_cone_solver(0.1, t, 4.0, params, KorobovEstimator::Lattice,
                                                64.0, 42);
    auto [out, cost] = run_algorithm(alg, Element{trig_zero(1)});
    CHECK(is_zero_element(out, 0.0));
    CHECK(cost.n() == inst.pilot.m);
}
