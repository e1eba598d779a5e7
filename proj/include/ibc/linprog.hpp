#pragma once

#include <Eigen/Core>

namespace ibc {

struct LPResult {
    bool optimal = false;
    bool infeasible = false;
    bool unbounded = false;
    Eigen::VectorXd x;
    double value = 0.0;
};

/// Dense two-phase simplex with Bland's rule for
///   min c^T x  s.t.  A x = b,  x >= 0.
/// Intended for the small problems arising here (tens of variables).
LPResult solve_lp(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, const Eigen::VectorXd& c);

}  // namespace ibc
