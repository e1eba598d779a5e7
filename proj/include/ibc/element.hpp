#pragma once

#include <Eigen/Core>

#include <complex>
#include <map>
#include <stdexcept>
#include <variant>
#include <vector>

namespace ibc {

using Scalar = std::complex<double>;
using Data = std::vector<Scalar>;  // finite measurement tuple in K^n

struct IncompatibleKind : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Finite vector over R or C. `real_field` records whether the ambient
/// field is R (imaginary parts are then required to stay zero).
struct VectorElem {
    Eigen::VectorXcd v;
    bool real_field = true;
};

/// Continuous piecewise-linear function on [0,1], given by strictly
/// increasing breakpoints x (x.front()=0, x.back()=1) and values v.
/// All norms used in the experiments have closed forms on this class.
struct PWLinear {
    std::vector<double> x;
    std::vector<double> v;

    double eval(double t) const;
    double integral() const;
    double norm_l2_sq() const;
    double norm_l4_p4() const;
    double deriv_l2_sq() const;
    double norm_linf() const;
    double lip_const() const;
    /// max(sup norm, Lipschitz constant)
    double norm_lip() const { return std::max(norm_linf(), lip_const()); }
};

PWLinear make_pwlinear(std::vector<double> x, std::vector<double> v);
PWLinear pwl_constant(double c);
/// a*f + b*g on the merged breakpoint grid (exact).
PWLinear pwl_lincomb(double a, const PWLinear& f, double b, const PWLinear& g);
PWLinear pwl_scale(const PWLinear& f, double a);

/// Finite trigonometric polynomial sum_k c_k e^{2 pi i k.x} on [0,1]^d.
struct TrigPoly {
    int dim = 1;
    std::map<std::vector<int>, Scalar> coeff;

    Scalar eval(const std::vector<double>& x) const;
    double norm_l2() const;
    void prune(double tol = 0.0);
};

TrigPoly trig_zero(int dim);
TrigPoly trig_lincomb(Scalar a, const TrigPoly& f, Scalar b, const TrigPoly& g);

/// M-fold product element; block i is a PWLinear on [0,1].
struct BlockElem {
    std::vector<PWLinear> blocks;
};

using Element = std::variant<VectorElem, PWLinear, TrigPoly, BlockElem>;

/// lambda * f. Complex lambda is only valid for vector/trig elements over C.
Element scale_element(const Element& f, Scalar lambda);
/// a - b for matching element kinds (merged grids / coefficient maps).
Element element_diff(const Element& a, const Element& b);
bool is_zero_element(const Element& f, double tol = 0.0);

}  // namespace ibc
