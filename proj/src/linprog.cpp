#include "ibc/linprog.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace ibc {

namespace {

constexpr double kPivotTol = 1e-11;
constexpr double kCostTol = 1e-9;

// Tableau kept canonical w.r.t. the basis (basis columns form an identity).
// Returns 0 on optimal, 1 on unbounded.
int simplex_core(Eigen::MatrixXd& T, std::vector<int>& basis, const Eigen::VectorXd& cost,
                 int num_cols) {
    const int m = static_cast<int>(T.rows());
    const int rhs = static_cast<int>(T.cols()) - 1;
    for (long iter = 0; iter < 100000; ++iter) {
        int enter = -1;
        for (int j = 0; j < num_cols; ++j) {  // Bland: first improving column
            double rj = cost[j];
            for (int i = 0; i < m; ++i) rj -= cost[basis[static_cast<std::size_t>(i)]] * T(i, j);
            if (rj < -kCostTol) {
                enter = j;
                break;
            }
        }
        if (enter < 0) return 0;
        int leave = -1;
        double best = 0.0;
        for (int i = 0; i < m; ++i) {
            if (T(i, enter) > kPivotTol) {
                double ratio = T(i, rhs) / T(i, enter);
                if (leave < 0 || ratio < best - 1e-14 ||
                    (std::abs(ratio - best) <= 1e-14 &&
                     basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(leave)])) {
                    leave = i;
                    best = ratio;
                }
            }
        }
        if (leave < 0) return 1;
        T.row(leave) /= T(leave, enter);
        for (int i = 0; i < m; ++i) {
            if (i == leave) continue;
            double factor = T(i, enter);
            if (factor != 0.0) T.row(i) -= factor * T.row(leave);
        }
        basis[static_cast<std::size_t>(leave)] = enter;
    }
    throw std::runtime_error("simplex: iteration cap reached");
}

}  // namespace

LPResult solve_lp(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, const Eigen::VectorXd& c) {
    const int m = static_cast<int>(A.rows());
    const int n = static_cast<int>(A.cols());
    if (b.size() != m || c.size() != n) throw std::invalid_argument("solve_lp: size mismatch");

    // Phase 1 tableau [A | I | b] with b >= 0.
    Eigen::MatrixXd T(m, n + m + 1);
    T.setZero();
    for (int i = 0; i < m; ++i) {
        double sign = b[i] >= 0.0 ? 1.0 : -1.0;
        T.block(i, 0, 1, n) = sign * A.row(i);
        T(i, n + i) = 1.0;
        T(i, n + m) = sign * b[i];
    }
    std::vector<int> basis(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) basis[static_cast<std::size_t>(i)] = n + i;

    Eigen::VectorXd c1 = Eigen::VectorXd::Zero(n + m);
    c1.tail(m).setOnes();
    simplex_core(T, basis, c1, n + m);

    double phase1 = 0.0;
    for (int i = 0; i < m; ++i)
        if (basis[static_cast<std::size_t>(i)] >= n) phase1 += T(i, n + m);
    LPResult res;
    if (phase1 > 1e-7) {
        res.infeasible = true;
        return res;
    }
    // Drive remaining zero-level artificials out of the basis.
    for (int i = 0; i < m; ++i) {
        if (basis[static_cast<std::size_t>(i)] < n) continue;
        int piv = -1;
        for (int j = 0; j < n; ++j)
            if (std::abs(T(i, j)) > kPivotTol) {
                piv = j;
                break;
            }
        if (piv < 0) continue;  // redundant row, harmless with zero rhs
        T.row(i) /= T(i, piv);
        for (int r = 0; r < m; ++r) {
            if (r == i) continue;
            double factor = T(r, piv);
            if (factor != 0.0) T.row(r) -= factor * T.row(i);
        }
        basis[static_cast<std::size_t>(i)] = piv;
    }

    Eigen::VectorXd c2 = Eigen::VectorXd::Zero(n + m);
    c2.head(n) = c;
    int status = simplex_core(T, basis, c2, n);
    if (status == 1) {
        res.unbounded = true;
        return res;
    }
    res.optimal = true;
    res.x = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < m; ++i)
        if (basis[static_cast<std::size_t>(i)] < n) res.x[basis[static_cast<std::size_t>(i)]] = T(i, n + m);
    res.value = c.dot(res.x);
    return res;
}

}  // namespace ibc
