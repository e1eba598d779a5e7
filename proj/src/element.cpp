#include "ibc/element.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace ibc {

PWLinear make_pwlinear(std::vector<double> x, std::vector<double> v) {
    if (x.size() < 2 || x.size() != v.size())
        throw std::invalid_argument("pwlinear: need >=2 matching breakpoints/values");
    if (x.front() != 0.0 || x.back() != 1.0)
        throw std::invalid_argument("pwlinear: breakpoints must start at 0 and end at 1");
    for (std::size_t i = 1; i < x.size(); ++i)
        if (!(x[i] > x[i - 1])) throw std::invalid_argument("pwlinear: breakpoints not strictly increasing");
    for (double val : v)
        if (!std::isfinite(val)) throw std::invalid_argument("pwlinear: non-finite value");
    return PWLinear{std::move(x), std::move(v)};
}

PWLinear pwl_constant(double c) { return PWLinear{{0.0, 1.0}, {c, c}}; }

double PWLinear::eval(double t) const {
    if (t <= x.front()) return v.front();
    if (t >= x.back()) return v.back();
    auto it = std::upper_bound(x.begin(), x.end(), t);
    std::size_t i = static_cast<std::size_t>(it - x.begin());  // x[i-1] <= t < x[i]
    if (v[i - 1] == v[i]) return v[i];  // constant segments evaluate exactly
    double h = x[i] - x[i - 1];
    double w = (t - x[i - 1]) / h;
    return v[i - 1] * (1.0 - w) + v[i] * w;
}

double PWLinear::integral() const {
    double s = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i) s += (x[i] - x[i - 1]) * 0.5 * (v[i - 1] + v[i]);
    return s;
}

double PWLinear::norm_l2_sq() const {
    // int of (linear from a to b)^2 over length h: h*(a^2+ab+b^2)/3
    double s = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i) {
        double h = x[i] - x[i - 1], a = v[i - 1], b = v[i];
        s += h * (a * a + a * b + b * b) / 3.0;
    }
    return s;
}

double PWLinear::norm_l4_p4() const {
    // int of (linear)^4: h*(a^4+a^3 b+a^2 b^2+a b^3+b^4)/5
    double s = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i) {
        double h = x[i] - x[i - 1], a = v[i - 1], b = v[i];
        s += h * (a * a * a * a + a * a * a * b + a * a * b * b + a * b * b * b + b * b * b * b) / 5.0;
    }
    return s;
}

double PWLinear::deriv_l2_sq() const {
    double s = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i) {
        double h = x[i] - x[i - 1];
        double slope = (v[i] - v[i - 1]) / h;
        s += slope * slope * h;
    }
    return s;
}

double PWLinear::norm_linf() const {
    double m = 0.0;
    for (double val : v) m = std::max(m, std::abs(val));
    return m;
}

double PWLinear::lip_const() const {
    double m = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i)
        m = std::max(m, std::abs((v[i] - v[i - 1]) / (x[i] - x[i - 1])));
    return m;
}

PWLinear pwl_lincomb(double a, const PWLinear& f, double b, const PWLinear& g) {
    std::vector<double> grid;
    grid.reserve(f.x.size() + g.x.size());
    std::merge(f.x.begin(), f.x.end(), g.x.begin(), g.x.end(), std::back_inserter(grid));
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    std::vector<double> vals(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) vals[i] = a * f.eval(grid[i]) + b * g.eval(grid[i]);
    return PWLinear{std::move(grid), std::move(vals)};
}

PWLinear pwl_scale(const PWLinear& f, double a) {
    PWLinear r = f;
    for (double& val : r.v) val *= a;
    return r;
}

TrigPoly trig_zero(int dim) { return TrigPoly{dim, {}}; }

Scalar TrigPoly::eval(const std::vector<double>& x) const {
    if (static_cast<int>(x.size()) != dim) throw IncompatibleKind("trig eval: dimension mismatch");
    Scalar s = 0.0;
    for (const auto& [k, c] : coeff) {
        double phase = 0.0;
        for (int j = 0; j < dim; ++j) phase += k[static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(j)];
        s += c * std::polar(1.0, 2.0 * std::numbers::pi * phase);
    }
    return s;
}

double TrigPoly::norm_l2() const {
    double s = 0.0;
    for (const auto& [k, c] : coeff) s += std::norm(c);
    return std::sqrt(s);
}

void TrigPoly::prune(double tol) {
    for (auto it = coeff.begin(); it != coeff.end();)
        it = (std::abs(it->second) <= tol) ? coeff.erase(it) : std::next(it);
}

TrigPoly trig_lincomb(Scalar a, const TrigPoly& f, Scalar b, const TrigPoly& g) {
    if (f.dim != g.dim) throw IncompatibleKind("trig lincomb: dimension mismatch");
    TrigPoly r{f.dim, {}};
    for (const auto& [k, c] : f.coeff) r.coeff[k] += a * c;
    for (const auto& [k, c] : g.coeff) r.coeff[k] += b * c;
    return r;
}

Element scale_element(const Element& f, Scalar lambda) {
    return std::visit(
        [&](const auto& e) -> Element {
            using T = std::decay_t<decltype(e)>;
            if constexpr (std::is_same_v<T, VectorElem>) {
                if (e.real_field && lambda.imag() != 0.0)
                    throw IncompatibleKind("scale: complex scalar on real vector");
                return VectorElem{lambda * e.v, e.real_field};
            } else if constexpr (std::is_same_v<T, TrigPoly>) {
                TrigPoly r = e;
                for (auto& [k, c] : r.coeff) c *= lambda;
                return r;
            } else if constexpr (std::is_same_v<T, PWLinear>) {
                if (lambda.imag() != 0.0) throw IncompatibleKind("scale: complex scalar on pwlinear");
                return pwl_scale(e, lambda.real());
            } else {
                if (lambda.imag() != 0.0) throw IncompatibleKind("scale: complex scalar on block element");
                BlockElem r = e;
                for (auto& blk : r.blocks) blk = pwl_scale(blk, lambda.real());
                return r;
            }
        },
        f);
}

Element element_diff(const Element& a, const Element& b) {
    return std::visit(
        [&](const auto& x) -> Element {
            using T = std::decay_t<decltype(x)>;
            const auto* y = std::get_if<T>(&b);
            if (!y) throw IncompatibleKind("element diff: mismatched kinds");
            if constexpr (std::is_same_v<T, VectorElem>) {
                if (x.v.size() != y->v.size()) throw IncompatibleKind("element diff: size mismatch");
                return VectorElem{x.v - y->v, x.real_field && y->real_field};
            } else if constexpr (std::is_same_v<T, PWLinear>) {
                return pwl_lincomb(1.0, x, -1.0, *y);
            } else if constexpr (std::is_same_v<T, TrigPoly>) {
                return trig_lincomb(1.0, x, -1.0, *y);
            } else {
                if (x.blocks.size() != y->blocks.size())
                    throw IncompatibleKind("element diff: block count mismatch");
                BlockElem r;
                for (std::size_t i = 0; i < x.blocks.size(); ++i)
                    r.blocks.push_back(pwl_lincomb(1.0, x.blocks[i], -1.0, y->blocks[i]));
                return r;
            }
        },
        a);
}

bool is_zero_element(const Element& f, double tol) {
    return std::visit(
        [&](const auto& e) -> bool {
            using T = std::decay_t<decltype(e)>;
            if constexpr (std::is_same_v<T, VectorElem>) {
                return e.v.size() == 0 || e.v.template lpNorm<Eigen::Infinity>() <= tol;
            } else if constexpr (std::is_same_v<T, TrigPoly>) {
                for (const auto& [k, c] : e.coeff)
                    if (std::abs(c) > tol) return false;
                return true;
            } else if constexpr (std::is_same_v<T, PWLinear>) {
                return e.norm_linf() <= tol;
            } else {
                for (const auto& blk : e.blocks)
                    if (blk.norm_linf() > tol) return false;
                return true;
            }
        },
        f);
}

}  // namespace ibc
