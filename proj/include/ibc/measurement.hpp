#pragma once

#include "ibc/norms.hpp"

namespace ibc {

/// Point evaluation f(x), x in [0,1]^d. For block elements, `block`
/// selects the component to evaluate (then x is 1-dimensional).
struct PointEval {
    std::vector<double> x;
    int block = -1;
};

/// Linear functional f -> sum_i a_i f_i on vector elements.
struct LinearFunctional {
    Eigen::VectorXcd a;
};

/// Homogeneous (non-linear) measurement ||f_i|| on block elements.
struct BlockNorm {
    int index = 0;
    NormSpec norm = NormSpec::lip();
};

using Measurement = std::variant<PointEval, LinearFunctional, BlockNorm>;

Scalar apply_measurement(const Measurement& m, const Element& f);
bool is_linear_measurement(const Measurement& m);

}  // namespace ibc
