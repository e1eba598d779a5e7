#pragma once

#include "ibc/element.hpp"

#include <memory>
#include <optional>

namespace ibc {

/// Parameters of the weighted periodic smoothness norm: smoothness
/// alpha > 1/2 and a nonincreasing weight sequence gamma in (0,1].
struct KorobovParams {
    double alpha = 1.0;
    std::vector<double> gamma;
    int d = 1;

    void validate() const;
};

/// Frequency weight r_{2 alpha, gamma}(k) = prod_j (k_j==0 ? 1 : |k_j|^{2 alpha}/gamma_j).
double korobov_weight(const std::vector<int>& k, const KorobovParams& params);

struct NormSpec {
    enum class Kind { Lp, L2, L4, W12, Linf, Lip, Korobov, SupBlocks, SumBlocks };

    Kind kind = Kind::L2;
    double p = 2.0;                        // for Lp
    std::optional<KorobovParams> korobov;  // for Korobov
    std::shared_ptr<NormSpec> inner;       // for Sup/SumBlocks

    static NormSpec lp(double p);
    static NormSpec l2() { return NormSpec{Kind::L2}; }
    static NormSpec l4() { return NormSpec{Kind::L4}; }
    static NormSpec w12() { return NormSpec{Kind::W12}; }
    static NormSpec linf() { return NormSpec{Kind::Linf}; }
    static NormSpec lip() { return NormSpec{Kind::Lip}; }
    static NormSpec korobov_norm(KorobovParams params);
    static NormSpec sup_blocks(NormSpec inner);
    static NormSpec sum_blocks(NormSpec inner);
};

/// Minkowski functional of the unit ball of the given norm, i.e. the norm
/// itself: inf { r>0 : f/r in ball }. Absolutely homogeneous; 0 for f=0.
double minkowski_functional(const NormSpec& norm, const Element& f);

/// ||a - b|| in the given norm.
double element_distance(const NormSpec& norm, const Element& a, const Element& b);

}  // namespace ibc
