#include "ibc/recovery.hpp"

#include <doctest.h>

#include <Eigen/Dense>

#include <cmath>
#include <random>

using namespace ibc;

namespace {

Eigen::MatrixXd rand_mat(std::mt19937_64& rng, Eigen::Index r, Eigen::Index c) {
    std::normal_distribution<double> g(0.0, 1.0);
    Eigen::MatrixXd A(r, c);
    for (Eigen::Index i = 0; i < r; ++i)
        for (Eigen::Index j = 0; j < c; ++j) A(i, j) = g(rng);
    return A;
}

// brute-force l1 section oracle: dense scan over the kernel ball
double scan_l1_max(const Eigen::MatrixXd& N, const Eigen::MatrixXd& S) {
    Eigen::MatrixXcd K = kernel_basis(N.cast<Scalar>());
    REQUIRE(K.cols() == 1);  // designed for 1-dim kernels
    Eigen::VectorXd k = K.real().col(0);
    double l1 = k.cwiseAbs().sum();
    return (S * (k / l1)).norm();
}

}  // namespace

TEST_CASE("kernel basis is orthonormal and annihilated by N") {
    std::mt19937_64 rng(3);
    Eigen::MatrixXcd N = rand_mat(rng, 2, 5).cast<Scalar>();
    Eigen::MatrixXcd K = kernel_basis(N);
    REQUIRE(K.cols() == 3);
    CHECK((N * K).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((K.adjoint() * K - Eigen::MatrixXcd::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("kernel basis detects rank deficiency") {
    Eigen::MatrixXcd N(2, 3);
    N << 1, 2, 3, 2, 4, 6;  // rank 1
    CHECK(kernel_basis(N).cols() == 2);
}

TEST_CASE("diam oracle p=2 equals the kernel-restricted singular value") {
    std::mt19937_64 rng(5);
    FiniteLinearProblem prob;
    prob.N = rand_mat(rng, 2, 4).cast<Scalar>();
    prob.S = rand_mat(rng, 2, 4).cast<Scalar>();
    DiamResult res = diam_oracle(prob);
    Eigen::MatrixXcd K = kernel_basis(prob.N);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(prob.S * K);
    CHECK(res.value == doctest::Approx(2.0 * svd.singularValues()[0]).epsilon(1e-12));
    // witness is feasible and attains the diameter
    CHECK((prob.N * res.witness).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(res.witness.norm() <= 1.0 + 1e-12);
    CHECK((prob.S * res.witness).norm() == doctest::Approx(res.value / 2.0).epsilon(1e-10));
}

TEST_CASE("diam oracle p=1 agrees with the dense kernel scan") {
    std::mt19937_64 rng(6);
    for (int i = 0; i < 10; ++i) {
        FiniteLinearProblem prob;
        prob.p = 1.0;
        prob.N = rand_mat(rng, 3, 4).cast<Scalar>();  // 1-dim kernel
        prob.S = rand_mat(rng, 2, 4).cast<Scalar>();
        double oracle = 2.0 * scan_l1_max(prob.N.real(), prob.S.real());
        CHECK(diam_oracle(prob).value == doctest::Approx(oracle).epsilon(1e-9));
    }
}

TEST_CASE("linf section vertices have unit sup norm and lie in the kernel") {
    std::mt19937_64 rng(8);
    Eigen::MatrixXd N = rand_mat(rng, 2, 4);
    Eigen::MatrixXd V = linf_section_vertices(N);
    REQUIRE(V.cols() > 0);
    for (Eigen::Index j = 0; j < V.cols(); ++j) {
        CHECK((N * V.col(j)).cwiseAbs().maxCoeff() < 1e-9);
        CHECK(V.col(j).cwiseAbs().maxCoeff() == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("min norm preimage: p=2 matches the pseudoinverse, p=1 the LP oracle") {
    std::mt19937_64 rng(9);
    Eigen::MatrixXcd N = rand_mat(rng, 2, 5).cast<Scalar>();
    Eigen::VectorXcd y = rand_mat(rng, 2, 1).cast<Scalar>();

    Eigen::VectorXcd s2 = min_norm_preimage(N, y, 2.0, 0.0);
    Eigen::VectorXcd pinv = N.completeOrthogonalDecomposition().solve(y);
    CHECK((s2 - pinv).norm() < 1e-9);

    Eigen::VectorXcd s1 = min_norm_preimage(N, y, 1.0, 0.01);
    CHECK((N * s1 - y).cwiseAbs().maxCoeff() < 1e-7);
    double exact = min_l1_norm_exact(N.real(), y.real());
    CHECK(s1.cwiseAbs().sum() <= (1.0 + 0.011) * exact);
}

TEST_CASE("basis pursuit reproduces the exact l1 minimum") {
    std::mt19937_64 rng(10);
    for (int i = 0; i < 5; ++i) {
        Eigen::MatrixXd N = rand_mat(rng, 3, 6);
        Eigen::VectorXd y = rand_mat(rng, 3, 1);
        Eigen::VectorXcd h = basis_pursuit(N.cast<Scalar>(), y.cast<Scalar>(), 1e-9);
        CHECK((N.cast<Scalar>() * h - y.cast<Scalar>()).cwiseAbs().maxCoeff() < 1e-7);
        CHECK(h.cwiseAbs().sum() == doctest::Approx(min_l1_norm_exact(N, y)).epsilon(1e-5));
    }
}

TEST_CASE("basis pursuit handles complex data via the iterative path") {
    std::mt19937_64 rng(15);
    std::normal_distribution<double> g(0.0, 1.0);
    Eigen::MatrixXcd N(2, 5);
    for (Eigen::Index i = 0; i < 2; ++i)
        for (Eigen::Index j = 0; j < 5; ++j) N(i, j) = Scalar(g(rng), g(rng));
    Eigen::VectorXcd x0 = Eigen::VectorXcd::Zero(5);
    x0[1] = Scalar(1.0, -0.5);
    Eigen::VectorXcd y = N * x0;
    Eigen::VectorXcd h = basis_pursuit(N, y, 1e-8);
    CHECK((N * h - y).cwiseAbs().maxCoeff() < 1e-6);
    CHECK(h.cwiseAbs().sum() <= x0.cwiseAbs().sum() + 1e-5);
}

TEST_CASE("homogenize gives exact complex homogeneity") {
    // positively homogeneous but not homogeneous base map
    VecMap raw = [](const Eigen::VectorXcd& y) -> Eigen::VectorXcd {
        Eigen::VectorXcd out(1);
        out[0] = y.cwiseAbs().sum();  // phase-blind
        return out;
    };
    VecMap phi = homogenize(raw, false);
    Eigen::VectorXcd y(2);
    y << Scalar(1.0, 2.0), Scalar(-0.5, 0.25);
    for (Scalar lam : {Scalar(2.0, 0.0), Scalar(0.0, 1.0), Scalar(-0.3, 0.4)}) {
        Eigen::VectorXcd a = phi(lam * y);
        Eigen::VectorXcd b = lam * phi(y);
        CHECK((a - b).norm() < 1e-12 * std::max(1.0, b.norm()));
    }
    CHECK(phi(Eigen::VectorXcd::Zero(2)).cwiseAbs().maxCoeff() ==
          doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("homogeneous recovery meets the (1+delta) diameter bound") {
    std::mt19937_64 rng(12);
    FiniteLinearProblem prob;
    prob.p = 1.0;
    prob.N = rand_mat(rng, 2, 4).cast<Scalar>();
    prob.S = rand_mat(rng, 2, 4).cast<Scalar>();
    RecoveryMap rec = homogeneous_recovery(prob, 0.01);
    double err = exact_error_ball_vertices(prob, rec.phi);
    CHECK(err <= 1.01 * diam_oracle(prob).value + 1e-9);
}

TEST_CASE("recovery validation rejects complex polytope balls") {
    FiniteLinearProblem prob;
    prob.p = 1.0;
    prob.real_field = false;
    prob.N = Eigen::MatrixXcd::Identity(1, 2);
    prob.S = Eigen::MatrixXcd::Identity(1, 2);
    CHECK_THROWS(prob.validate());
}

TEST_CASE("nonadaptive projection freezes the measurements chosen at zero") {
    Eigen::VectorXcd a0(2), a1(2), mix(2);
    a0 << 1.0, 0.0;
    a1 << 0.0, 1.0;
    mix << 5.0, 5.0;
    AdaptiveAlgorithm alg;
    alg.info.select = [=](std::size_t j, const Data& prior) -> Measurement {
        if (j == 1) return LinearFunctional{a0};
        return LinearFunctional{(a1 + prior[0].real() * mix).eval()};
    };
    alg.info.stop = [](const Data& d) { return d.size() >= 2; };
    alg.recovery = [](const Data&) -> Element { return VectorElem{Eigen::VectorXcd::Zero(2), true}; };
    Eigen::MatrixXcd N = functional_matrix(nonadaptive_projection(alg), 2);
    CHECK((N - Eigen::MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("nonadaptive projection refuses norm measurements") {
    AdaptiveAlgorithm alg;
    alg.info.select = [](std::size_t, const Data&) -> Measurement { return BlockNorm{0}; };
    alg.info.stop = [](const Data& d) { return d.size() >= 1; };
    CHECK_THROWS_AS(nonadaptive_projection(alg), IncompatibleKind);
}

TEST_CASE("kashin construction: exact error and measurement count") {
    KashinAlgorithm ka = kashin_linear_algorithm(8, 2);
    CHECK(ka.exact_error == doctest::Approx(std::sqrt(6.0 / 8.0)).epsilon(1e-14));
    CHECK(ka.N.rows() == 2);
    // rows are orthonormal
    CHECK((ka.N * ka.N.transpose() - Eigen::MatrixXd::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK_THROWS(kashin_linear_algorithm(6, 2));  // not a power of two
}

TEST_CASE("sampled l2-ball error dominates the diameter witness") {
    std::mt19937_64 rng(14);
    FiniteLinearProblem prob;
    prob.N = rand_mat(rng, 2, 4).cast<Scalar>();
    prob.S = rand_mat(rng, 2, 4).cast<Scalar>();
    RecoveryMap rec = homogeneous_recovery(prob, 0.01);
    double e1 = sampled_error_l2_ball(prob, rec.phi, 500, 99);
    double e2 = sampled_error_l2_ball(prob, rec.phi, 500, 99);
    CHECK(e1 == e2);  // determinism
    CHECK(e1 >= diam_oracle(prob).value / 2.0 - 1e-9);
}
