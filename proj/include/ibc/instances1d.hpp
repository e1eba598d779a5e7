#pragma once

#include "ibc/cone.hpp"

namespace ibc {

// ---- L2-approximation on the inverse-Poincare cone ----

/// Piecewise-linear interpolant of f at the n+1 nodes j/n. Worst-case L2
/// error on the W12 unit ball is 1/(pi n) (per-subinterval Poincare).
PWLinear sobolev_interp(const PWLinear& f, int n);

/// Certified ball error of the interpolant with n subintervals.
double sobolev_error_bound(std::size_t n_intervals);

/// The cone ||f'||_2 <= t ||f||_2 embeds into the two-step machinery as
/// ||f||_W12 <= sqrt(1+t^2) ||f||_2, i.e. T = identity into L2 with
/// inflation factor sqrt(1+t^2).
struct SobolevInstance {
    PilotAlgorithm pilot;
    SolverFamily family;
    ConeSpec cone;
    double t_inflated = 0.0;
};

SobolevInstance sobolev_instance(double t);
AdaptiveAlgorithm sobolev_cone_solver(double eps, double t);

/// Integration post-processor: |int f - int A(f)| <= ||f - A(f)||_2.
double integral_of_output(const Element& out);

// ---- Bisection (adaptive beats non-adaptive exponentially) ----

struct BisectionResult {
    double z = 0.0;
    std::size_t cost = 0;  // function evaluations used
};

/// n bisection steps toward z with f(z) = (f(0)+f(1/2))/2 on [0,1/2],
/// using n+1 evaluations; |z(f) - z_n| <= 2^-n. Tie rule: when a midpoint
/// hits the target exactly, keep the left interval.
BisectionResult bisection_z(const PWLinear& f, int n);

/// The unique bisection limit z(f) (resolved far below double precision).
double bisection_limit(const PWLinear& f);

/// Solution operator S(f) = f(z(f) + 1/2).
double bisection_solution(const PWLinear& f);

/// Adaptive algorithm with n+1 point evaluations and error <= 2^-n on the
/// Lipschitz unit ball: locate z to within 2^-n, then evaluate at z + 1/2.
/// Output is a 1-dimensional vector element. Requires n >= 2.
AdaptiveAlgorithm bisection_algorithm(int n);

struct BisectionAdversarialPair {
    PWLinear f;
    PWLinear g;
    double a = 0.0;   // start of the node-free interval (a, a + 1/(2n))
    double sf = 0.0;  // S(f) = a + 3/(8n), closed form
    double sg = 0.0;  // S(g) = a + 5/(8n), closed form
};

/// Two unit-ball functions agreeing at all nodes whose solutions differ by
/// exactly 1/(4n); any algorithm fixed on these nodes errs >= 1/(8n).
BisectionAdversarialPair bisection_adversarial_pair(const std::vector<double>& nodes, int n);

// ---- M-fold product space with homogeneous norm measurements ----

/// Piecewise-constant function on [0,1]: value values[i] on
/// [edges[i], edges[i+1]).
struct StepFunction {
    std::vector<double> edges;   // 0 = e_0 < ... < e_m = 1
    std::vector<double> values;  // size m

    double eval(double x) const;
};

/// Exact sup-norm distance between a piecewise-linear function and a step
/// function (attained at a cell endpoint).
double sup_error_pwl_step(const PWLinear& f, const StepFunction& s);

struct ProductResult {
    std::vector<StepFunction> approx;      // one per block
    std::vector<std::size_t> allocation;   // m_i samples per block
    std::size_t cost = 0;                  // M norm queries + sum m_i <= n
    double sup_error = 0.0;                // max_i ||f_i - approx_i||_inf, exact
};

/// Measure the M block norms, then sample block i at m_i midpoints with
/// m_i = 0 if ||f_i|| < 2/(n-M), else ceil(||f_i|| (n-M)/2); piecewise-
/// constant interpolation. Error <= 2/(n-M) on the sum-norm unit ball.
ProductResult product_adaptive(const BlockElem& f, int n, int M);

/// Adversarial block function for a fixed per-block sample allocation:
/// supported on a block with <= n/M samples, vanishing at its nodes, with
/// ||f*||_inf >= M/(2n); indistinguishable from -f* under all allocated
/// measurements including block norms.
BlockElem product_adversarial(const std::vector<std::size_t>& allocation, int M, int n);

/// The midpoint sample positions used for m samples on [0,1].
std::vector<double> midpoint_nodes(std::size_t m);

// ---- Bounded-kurtosis impossibility adversary ----

/// Continuous f: [0,1] -> [0, 4 eps] vanishing at all given points with
/// measure{f = 4 eps} >= 1 - delta, hence ||f||_4 <= 4 eps and
/// ||f||_2 >= 4 eps sqrt(1-delta). Valleys are symmetric triangles of
/// half-width delta / (2 (#points + 2)) around each point and endpoint.
PWLinear kurtosis_adversarial(const std::vector<double>& points, double eps, double delta);

}  // namespace ibc
