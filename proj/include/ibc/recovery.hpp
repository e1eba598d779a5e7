#pragma once

#include "ibc/algorithm.hpp"

namespace ibc {

struct NonConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// S: k x m solution matrix, input set = unit lp ball (p in {1,2,inf}) in
/// K^m, output norm on K^k, N: n x m measurement matrix.
struct FiniteLinearProblem {
    Eigen::MatrixXcd S;
    double p = 2.0;
    NormSpec out_norm = NormSpec::l2();
    Eigen::MatrixXcd N;
    bool real_field = true;

    Eigen::Index m() const { return N.cols(); }
    Eigen::Index n() const { return N.rows(); }
    void validate() const;
};

/// Map from measurement data tuples to output coefficient vectors.
using VecMap = std::function<Eigen::VectorXcd(const Eigen::VectorXcd&)>;

struct RecoveryMap {
    VecMap phi;
    double delta = 0.0;
};

struct DiamResult {
    double value = 0.0;
    Eigen::VectorXcd witness;  // argmax h with N h = 0, ||h||_p <= 1
};

/// Orthonormal kernel basis of N; singular values below 1e-10 count as zero.
Eigen::MatrixXcd kernel_basis(const Eigen::MatrixXcd& N);

/// diam(N) = 2 max { ||S h||_G : h in ker N, ||h||_p <= 1 }.
/// p=2: largest singular value of S restricted to the kernel (l2 output);
/// p in {1,inf}: exact maximization over the vertices of the kernel
/// section of the ball (real field, m <= 8).
DiamResult diam_oracle(const FiniteLinearProblem& problem);

/// Vertices of {||h||_1 <= 1} cap ker N, resp. {||h||_inf <= 1} cap ker N
/// (columns). Real matrices only.
Eigen::MatrixXd l1_section_vertices(const Eigen::MatrixXd& N);
Eigen::MatrixXd linf_section_vertices(const Eigen::MatrixXd& N);

/// Approximate spline value s(y): N s(y) = y and ||s(y)||_p <= (1+delta) K(y)
/// with K(y) the minimal norm over the preimage. Positively homogeneous.
Eigen::VectorXcd min_norm_preimage(const Eigen::MatrixXcd& N, const Eigen::VectorXcd& y, double p,
                                   double delta);

/// min ||h||_1 s.t. N h = y by ADMM (complex shrinkage); the returned point
/// is feasible to machine precision and the map is positively homogeneous.
Eigen::VectorXcd basis_pursuit(const Eigen::MatrixXcd& N, const Eigen::VectorXcd& y,
                               double tol = 1e-10, long max_iter = 500000);

/// Exact K_1(y) = min ||h||_1 s.t. N h = y by basic-solution enumeration
/// (real field, small m). Independent of the iterative path.
double min_l1_norm_exact(const Eigen::MatrixXd& N, const Eigen::VectorXd& y);

/// Turns a positively homogeneous data map into a fully homogeneous one:
/// phi*(y) = lambda(y) phi(y / lambda(y)) with |lambda(y)| = 1 chosen so
/// that the first nonzero coordinate of y / lambda(y) is real positive.
VecMap homogenize(VecMap phi, bool real_field);

/// Prop-1 construction phi* = homogenize(S o s) with the approximate
/// spline s; err(phi* o N) <= (1+delta) diam(N) on the unit ball.
RecoveryMap homogeneous_recovery(const FiniteLinearProblem& problem, double delta);

/// The fixed measurement sequence the algorithm selects at f = 0,
/// as a non-adaptive information map (measurements must be linear).
InformationMap nonadaptive_projection(const AdaptiveAlgorithm& alg);

/// Rows of a non-adaptive linear-functional information map as a matrix.
Eigen::MatrixXcd functional_matrix(const InformationMap& info, Eigen::Index m);

struct KashinAlgorithm {
    Eigen::MatrixXd N;          // n rows of the normalized Hadamard matrix
    AdaptiveAlgorithm alg;      // linear: y -> N^T y
    double exact_error = 0.0;   // worst case over the l1 ball, from vertices
};

/// The classical linear-optimal construction for l1^m -> l2^m approximation:
/// error sqrt((m-n)/m) for all n < m. m must be a power of two.
KashinAlgorithm kashin_linear_algorithm(int m, int n);

/// ||S f - phi(N f)||_G for one input.
double problem_error_at(const FiniteLinearProblem& problem, const VecMap& phi,
                        const Eigen::VectorXcd& f);

/// Exact worst-case error over the ball vertices (p in {1, inf}).
double exact_error_ball_vertices(const FiniteLinearProblem& problem, const VecMap& phi);

/// Sampled worst-case error over the l2 sphere, always including the
/// +-(kernel witness) pair so the value dominates diam/2.
double sampled_error_l2_ball(const FiniteLinearProblem& problem, const VecMap& phi, int trials,
                             std::uint64_t seed, bool parallel = true);

/// Wraps (problem, phi) as an adaptive algorithm over vector elements.
AdaptiveAlgorithm to_algorithm(const FiniteLinearProblem& problem, VecMap phi);

}  // namespace ibc
