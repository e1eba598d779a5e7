#include "ibc/measurement.hpp"

namespace ibc {

namespace {

Scalar point_eval(const PointEval& m, const Element& f) {
    if (const auto* p = std::get_if<PWLinear>(&f)) {
        if (m.x.size() != 1) throw IncompatibleKind("point eval: univariate element");
        return p->eval(m.x[0]);
    }
    if (const auto* t = std::get_if<TrigPoly>(&f)) return t->eval(m.x);
    if (const auto* b = std::get_if<BlockElem>(&f)) {
        if (m.block < 0 || m.block >= static_cast<int>(b->blocks.size()))
            throw IncompatibleKind("point eval: block index out of range");
        if (m.x.size() != 1) throw IncompatibleKind("point eval: univariate block");
        return b->blocks[static_cast<std::size_t>(m.block)].eval(m.x[0]);
    }
    throw IncompatibleKind("point eval not applicable to vector element");
}

}  // namespace

Scalar apply_measurement(const Measurement& m, const Element& f) {
    if (const auto* pe = std::get_if<PointEval>(&m)) return point_eval(*pe, f);
    if (const auto* lf = std::get_if<LinearFunctional>(&m)) {
        const auto* v = std::get_if<VectorElem>(&f);
        if (!v) throw IncompatibleKind("linear functional applies to vector elements");
        if (lf->a.size() != v->v.size()) throw IncompatibleKind("linear functional: size mismatch");
        Scalar s = 0.0;
        for (Eigen::Index i = 0; i < lf->a.size(); ++i) s += lf->a[i] * v->v[i];
        return s;
    }
    const auto& bn = std::get<BlockNorm>(m);
    const auto* b = std::get_if<BlockElem>(&f);
    if (!b) throw IncompatibleKind("block norm applies to block elements");
    if (bn.index < 0 || bn.index >= static_cast<int>(b->blocks.size()))
        throw IncompatibleKind("block norm: index out of range");
    return minkowski_functional(bn.norm, Element{b->blocks[static_cast<std::size_t>(bn.index)]});
}

bool is_linear_measurement(const Measurement& m) {
    return !std::holds_alternative<BlockNorm>(m);
}

}  // namespace ibc
