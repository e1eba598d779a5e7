#include "ibc/sampling.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>

namespace ibc {

InputSetSpec InputSetSpec::ball(double radius, NormSpec norm) {
    if (!(radius > 0.0)) throw std::invalid_argument("ball: radius must be positive");
    InputSetSpec s;
    s.kind = Kind::Ball;
    s.radius = radius;
    s.norm = std::move(norm);
    return s;
}

InputSetSpec InputSetSpec::cone_set(ConeSpec cone) {
    InputSetSpec s;
    s.kind = Kind::Cone;
    s.cone = std::make_shared<ConeSpec>(std::move(cone));
    return s;
}

bool set_contains(const InputSetSpec& set, const Element& f, double tol) {
    if (set.kind == InputSetSpec::Kind::Ball)
        return minkowski_functional(set.norm, f) <= set.radius * (1.0 + tol);
    return cone_contains(f, *set.cone, tol);
}

namespace {

double error_at(const AdaptiveAlgorithm& alg, const std::function<Element(const Element&)>& S,
                const NormSpec& out_norm, const Element& f) {
    Element out = run_algorithm(alg, f).first;
    Element truth = S(f);
    // ||truth - out||_G via the exact element arithmetic of the two kinds
    if (const auto* a = std::get_if<VectorElem>(&truth)) {
        const auto& b = std::get<VectorElem>(out);
        return minkowski_functional(out_norm, Element{VectorElem{a->v - b.v, a->real_field}});
    }
    if (const auto* a = std::get_if<PWLinear>(&truth)) {
        const auto& b = std::get<PWLinear>(out);
        return minkowski_functional(out_norm, Element{pwl_lincomb(1.0, *a, -1.0, b)});
    }
    if (const auto* a = std::get_if<TrigPoly>(&truth)) {
        const auto& b = std::get<TrigPoly>(out);
        return minkowski_functional(out_norm, Element{trig_lincomb(1.0, *a, -1.0, b)});
    }
    const auto& a = std::get<BlockElem>(truth);
    const auto& b = std::get<BlockElem>(out);
    if (a.blocks.size() != b.blocks.size()) throw IncompatibleKind("block residual: size mismatch");
    BlockElem diff;
    diff.blocks.reserve(a.blocks.size());
    for (std::size_t i = 0; i < a.blocks.size(); ++i)
        diff.blocks.push_back(pwl_lincomb(1.0, a.blocks[i], -1.0, b.blocks[i]));
    return minkowski_functional(out_norm, Element{diff});
}

}  // namespace

double max_error_over_samples_serial(const AdaptiveAlgorithm& alg,
                                     const std::function<Element(const Element&)>& S,
                                     const NormSpec& out_norm, const std::vector<Element>& samples) {
    double worst = 0.0;
    for (const Element& f : samples) worst = std::max(worst, error_at(alg, S, out_norm, f));
    return worst;
}

double max_error_over_samples_omp(const AdaptiveAlgorithm& alg,
                                  const std::function<Element(const Element&)>& S,
                                  const NormSpec& out_norm, const std::vector<Element>& samples) {
    double worst = 0.0;
    const std::int64_t n = static_cast<std::int64_t>(samples.size());
#pragma omp parallel for reduction(max : worst) schedule(dynamic, 8)
    for (std::int64_t i = 0; i < n; ++i)
        worst = std::max(worst, error_at(alg, S, out_norm, samples[static_cast<std::size_t>(i)]));
    return worst;
}

SampledError worst_case_error_sampled(const AdaptiveAlgorithm& alg,
                                      const std::function<Element(const Element&)>& S,
                                      const NormSpec& out_norm, const InputSetSpec& set,
                                      const std::function<Element(std::uint64_t)>& sampler,
                                      int trials, bool parallel) {
    if (trials < 1) throw std::invalid_argument("worst_case_error_sampled: trials >= 1");
    SampledError result;
    std::vector<Element> accepted;
    accepted.reserve(static_cast<std::size_t>(trials));
    for (std::uint64_t i = 0; i < static_cast<std::uint64_t>(trials); ++i) {
        Element f = sampler(i);
        if (set_contains(set, f))
            accepted.push_back(std::move(f));
        else
            ++result.rejected;
    }
    result.value = parallel ? max_error_over_samples_omp(alg, S, out_norm, accepted)
                            : max_error_over_samples_serial(alg, S, out_norm, accepted);
    return result;
}

double relative_error_sampled(const AdaptiveAlgorithm& alg,
                              const std::function<Element(const Element&)>& S,
                              const NormSpec& out_norm, const NormSpec& in_norm,
                              const std::vector<Element>& directions,
                              const std::vector<double>& scales) {
    double worst = 0.0;
    for (const Element& dir : directions) {
        double base = minkowski_functional(in_norm, dir);
        if (base == 0.0) continue;
        for (double s : scales) {
            Element f = scale_element(dir, s / base);  // ||f|| = s exactly up to round-off
            double err = error_at(alg, S, out_norm, f);
            worst = std::max(worst, err / minkowski_functional(in_norm, f));
        }
    }
    return worst;
}

}  // namespace ibc
