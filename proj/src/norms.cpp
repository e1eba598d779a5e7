#include "ibc/norms.hpp"

#include <cmath>

namespace ibc {

void KorobovParams::validate() const {
    if (!(alpha > 0.5)) throw std::invalid_argument("korobov: alpha must exceed 1/2");
    if (d < 1 || static_cast<int>(gamma.size()) != d)
        throw std::invalid_argument("korobov: need d weights");
    double prev = 1.0;
    for (double g : gamma) {
        if (!(g > 0.0 && g <= prev)) throw std::invalid_argument("korobov: weights must be nonincreasing in (0,1]");
        prev = g;
    }
}

double korobov_weight(const std::vector<int>& k, const KorobovParams& params) {
    if (static_cast<int>(k.size()) != params.d) throw IncompatibleKind("korobov weight: dimension mismatch");
    double r = 1.0;
    for (int j = 0; j < params.d; ++j) {
        int kj = k[static_cast<std::size_t>(j)];
        if (kj != 0) r *= std::pow(std::abs(static_cast<double>(kj)), 2.0 * params.alpha) / params.gamma[static_cast<std::size_t>(j)];
    }
    return r;
}

NormSpec NormSpec::lp(double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("lp norm: p must be >= 1");
    NormSpec s{Kind::Lp};
    s.p = p;
    return s;
}

NormSpec NormSpec::korobov_norm(KorobovParams params) {
    params.validate();
    NormSpec s{Kind::Korobov};
    s.korobov = std::move(params);
    return s;
}

NormSpec NormSpec::sup_blocks(NormSpec inner) {
    NormSpec s{Kind::SupBlocks};
    s.inner = std::make_shared<NormSpec>(std::move(inner));
    return s;
}

NormSpec NormSpec::sum_blocks(NormSpec inner) {
    NormSpec s{Kind::SumBlocks};
    s.inner = std::make_shared<NormSpec>(std::move(inner));
    return s;
}

namespace {

double vector_norm(const NormSpec& norm, const VectorElem& e) {
    switch (norm.kind) {
        case NormSpec::Kind::L2:
            return e.v.norm();
        case NormSpec::Kind::Linf:
            return e.v.size() == 0 ? 0.0 : e.v.lpNorm<Eigen::Infinity>();
        case NormSpec::Kind::Lp: {
            if (norm.p == 2.0) return e.v.norm();
            if (std::isinf(norm.p)) return e.v.size() == 0 ? 0.0 : e.v.lpNorm<Eigen::Infinity>();
            double s = 0.0;
            for (Eigen::Index i = 0; i < e.v.size(); ++i) s += std::pow(std::abs(e.v[i]), norm.p);
            return std::pow(s, 1.0 / norm.p);
        }
        default:
            throw IncompatibleKind("norm not defined for vector element");
    }
}

double pwl_norm(const NormSpec& norm, const PWLinear& e) {
    switch (norm.kind) {
        case NormSpec::Kind::L2:
            return std::sqrt(e.norm_l2_sq());
        case NormSpec::Kind::L4:
            return std::pow(e.norm_l4_p4(), 0.25);
        case NormSpec::Kind::W12:
            return std::sqrt(e.norm_l2_sq() + e.deriv_l2_sq());
        case NormSpec::Kind::Linf:
            return e.norm_linf();
        case NormSpec::Kind::Lip:
            return e.norm_lip();
        default:
            throw IncompatibleKind("norm not defined for piecewise-linear element");
    }
}

double trig_norm(const NormSpec& norm, const TrigPoly& e) {
    switch (norm.kind) {
        case NormSpec::Kind::L2:
            return e.norm_l2();
        case NormSpec::Kind::Korobov: {
            const KorobovParams& params = *norm.korobov;
            if (params.d != e.dim) throw IncompatibleKind("korobov norm: dimension mismatch");
            double s = 0.0;
            for (const auto& [k, c] : e.coeff) s += std::norm(c) * korobov_weight(k, params);
            return std::sqrt(s);
        }
        default:
            throw IncompatibleKind("norm not defined for trigonometric polynomial");
    }
}

double block_norm(const NormSpec& norm, const BlockElem& e) {
    if (!norm.inner) throw IncompatibleKind("block norm: missing inner norm");
    double acc = 0.0;
    for (const auto& blk : e.blocks) {
        double b = pwl_norm(*norm.inner, blk);
        if (norm.kind == NormSpec::Kind::SupBlocks)
            acc = std::max(acc, b);
        else
            acc += b;
    }
    return acc;
}

}  // namespace

double minkowski_functional(const NormSpec& norm, const Element& f) {
    return std::visit(
        [&](const auto& e) -> double {
            using T = std::decay_t<decltype(e)>;
            if constexpr (std::is_same_v<T, VectorElem>) {
                return vector_norm(norm, e);
            } else if constexpr (std::is_same_v<T, PWLinear>) {
                return pwl_norm(norm, e);
            } else if constexpr (std::is_same_v<T, TrigPoly>) {
                return trig_norm(norm, e);
            } else {
                if (norm.kind != NormSpec::Kind::SupBlocks && norm.kind != NormSpec::Kind::SumBlocks)
                    throw IncompatibleKind("norm not defined for block element");
                return block_norm(norm, e);
            }
        },
        f);
}

double element_distance(const NormSpec& norm, const Element& a, const Element& b) {
    return minkowski_functional(norm, element_diff(a, b));
}

}  // namespace ibc
