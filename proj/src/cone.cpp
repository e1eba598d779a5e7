#include "ibc/cone.hpp"

#include "ibc/sampling.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace ibc {

bool cone_contains(const Element& f, const ConeSpec& cone, double tol) {
    double lhs = minkowski_functional(cone.norm_f, f);
    double rhs = cone.t * minkowski_functional(cone.norm_h, cone.T(f));
    return lhs <= rhs + tol * std::max(1.0, rhs);
}

std::size_t required_cardinality(double eps, double t, double pilot_norm,
                                 const std::function<double(std::size_t)>& error_bound,
                                 std::size_t k_min, std::size_t n_max) {
    if (!(eps > 0.0) || !(t > 0.0) || !(pilot_norm > 0.0))
        throw std::invalid_argument("required_cardinality: eps, t, pilot_norm must be positive");
    const double threshold = eps / (2.0 * t * pilot_norm);
    if (error_bound(k_min) <= threshold) return k_min;
    // doubling phase
    std::size_t lo = k_min, hi = k_min;
    while (true) {
        if (hi >= n_max) {
            if (error_bound(n_max) <= threshold) {
                hi = n_max;
                break;
            }
            throw UnsolvableAtCap("required_cardinality: error bound does not reach threshold within n_max");
        }
        lo = hi;
        hi = std::min(n_max, hi * 2);
        if (error_bound(hi) <= threshold) break;
    }
    // bisection: e(lo) > threshold >= e(hi)
    while (hi - lo > 1) {
        std::size_t mid = lo + (hi - lo) / 2;
        if (error_bound(mid) <= threshold)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

namespace {

struct TwoStepPlan {
    bool zero = false;
    double pilot_norm = 0.0;
    std::size_t k = 0;
    AdaptiveAlgorithm second;
};

struct TwoStepState {
    PilotAlgorithm pilot;
    SolverFamily family;
    ConeSpec cone;
    double eps = 0.0;
    Element zero_output;
    // memo keyed by the pilot data tuple; the adaptive loop re-derives the
    // plan at every step, and second-stage construction can be expensive.
    // Guarded because sampled-error estimation runs the algorithm from
    // several threads.
    mutable std::mutex mu;
    mutable std::map<std::vector<std::pair<double, double>>, TwoStepPlan> memo;

    const TwoStepPlan& plan(const Data& pilot_data) const {
        std::vector<std::pair<double, double>> key;
        key.reserve(pilot_data.size());
        for (Scalar y : pilot_data) key.emplace_back(y.real(), y.imag());
        std::scoped_lock lock(mu);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        TwoStepPlan p;
        Element q = pilot.alg.recovery(pilot_data);
        p.pilot_norm = minkowski_functional(cone.norm_h, q);
        if (p.pilot_norm == 0.0) {
            p.zero = true;
        } else {
            p.k = required_cardinality(eps, cone.t, p.pilot_norm, family.error_bound, family.k_min);
            p.second = family.build(p.k);
        }
        return memo.emplace(std::move(key), std::move(p)).first->second;
    }
};

}  // namespace

AdaptiveAlgorithm two_step_algorithm(const PilotAlgorithm& pilot, const SolverFamily& family,
                                     const ConeSpec& cone, double eps, Element zero_output) {
    if (!(pilot.ball_error <= 1.0 / (2.0 * cone.t)))
        throw std::invalid_argument("two_step_algorithm: pilot ball error must be <= 1/(2t)");
    auto st = std::make_shared<TwoStepState>();
    st->pilot = pilot;
    st->family = family;
    st->cone = cone;
    st->eps = eps;
    st->zero_output = std::move(zero_output);
    const std::size_t m = pilot.m;

    AdaptiveAlgorithm alg;
    alg.info.select = [st, m](std::size_t j, const Data& prior) -> Measurement {
        if (j <= m) return st->pilot.alg.info.select(j, prior);
        Data pilot_data(prior.begin(), prior.begin() + static_cast<std::ptrdiff_t>(m));
        const TwoStepPlan& p = st->plan(pilot_data);
        Data tail(prior.begin() + static_cast<std::ptrdiff_t>(m), prior.end());
        return p.second.info.select(j - m, tail);
    };
    alg.info.stop = [st, m](const Data& data) -> bool {
        if (data.size() < m) return false;
        Data pilot_data(data.begin(), data.begin() + static_cast<std::ptrdiff_t>(m));
        const TwoStepPlan& p = st->plan(pilot_data);
        if (data.size() == m) return p.zero;
        Data tail(data.begin() + static_cast<std::ptrdiff_t>(m), data.end());
        return p.second.info.stop(tail);
    };
    alg.recovery = [st, m](const Data& data) -> Element {
        Data pilot_data(data.begin(), data.begin() + static_cast<std::ptrdiff_t>(std::min(m, data.size())));
        const TwoStepPlan& p = st->plan(pilot_data);
        if (p.zero) return st->zero_output;
        Data tail(data.begin() + static_cast<std::ptrdiff_t>(m), data.end());
        return p.second.recovery(tail);
    };
    return alg;
}

TwoStepReport run_two_step_report(const PilotAlgorithm& pilot, const SolverFamily& family,
                                  const ConeSpec& cone, double eps, const Element& f,
                                  const std::function<Element(const Element&)>& S,
                                  const NormSpec& out_norm, const Element& zero_output) {
    AdaptiveAlgorithm alg = two_step_algorithm(pilot, family, cone, eps, zero_output);
    auto [out, cost] = run_algorithm(alg, f);

    TwoStepReport rep;
    rep.epsilon = eps;
    rep.t = cone.t;
    rep.m = pilot.m;
    rep.k = cost.n() >= pilot.m ? cost.n() - pilot.m : 0;

    Data pilot_data;
    pilot_data.reserve(pilot.m);
    for (std::size_t i = 0; i < pilot.m && i < cost.log.size(); ++i)
        pilot_data.push_back(cost.log[i].second);
    rep.pilot_norm = minkowski_functional(cone.norm_h, pilot.alg.recovery(pilot_data));
    rep.bound_rhs = rep.pilot_norm > 0.0 ? eps / (2.0 * cone.t * rep.pilot_norm) : 0.0;

    Element truth = S(f);
    if (const auto* a = std::get_if<PWLinear>(&truth)) {
        rep.residual_norm =
            minkowski_functional(out_norm, Element{pwl_lincomb(1.0, *a, -1.0, std::get<PWLinear>(out))});
    } else if (const auto* a = std::get_if<TrigPoly>(&truth)) {
        rep.residual_norm =
            minkowski_functional(out_norm, Element{trig_lincomb(1.0, *a, -1.0, std::get<TrigPoly>(out))});
    } else if (const auto* a = std::get_if<VectorElem>(&truth)) {
        rep.residual_norm = minkowski_functional(
            out_norm, Element{VectorElem{a->v - std::get<VectorElem>(out).v, a->real_field}});
    } else {
        throw IncompatibleKind("two-step report: unsupported output element");
    }
    return rep;
}

InformationMap rescale_information(const InformationMap& info, double r) {
    if (!(r > 0.0)) throw std::invalid_argument("rescale_information: r must be positive");
    InformationMap out;
    out.n_max = info.n_max;
    out.non_adaptive = info.non_adaptive;
    auto scaled = [r](const Data& data) {
        Data s(data);
        for (Scalar& y : s) y *= r;
        return s;
    };
    out.select = [info, scaled](std::size_t j, const Data& prior) { return info.select(j, scaled(prior)); };
    out.stop = [info, scaled](const Data& data) { return info.stop(scaled(data)); };
    return out;
}

UnsolvabilityReport fixed_cardinality_unsolvability_demo(
    const InputSetSpec& set, const InformationMap& info,
    const std::function<Element(const Element&)>& S, const NormSpec& out_norm,
    const std::function<std::optional<std::pair<Element, Element>>(const std::vector<Measurement>&)>&
        seed_provider,
    const std::vector<double>& eps_levels) {
    if (set.kind != InputSetSpec::Kind::Cone)
        throw std::invalid_argument("unsolvability demo: input set is not a cone");
    const ConeSpec& cone = *set.cone;

    // measurements the fixed-cardinality map would perform at f = 0
    std::vector<Measurement> at_zero;
    {
        Data data;
        if (!info.stop(data)) {
            for (std::size_t j = 1; j <= info.n_max; ++j) {
                Measurement m = info.select(j, data);
                if (!is_linear_measurement(m) && !std::holds_alternative<BlockNorm>(m))
                    throw IncompatibleKind("unsolvability demo: unsupported measurement");
                at_zero.push_back(m);
                data.push_back(0.0);  // every homogeneous measurement vanishes at 0
                if (info.stop(data)) break;
            }
        }
    }

    UnsolvabilityReport rep;
    auto seed = seed_provider(at_zero);
    if (!seed) return rep;  // inconclusive, not a failure
    const auto& [f, g] = *seed;
    if (!cone_contains(f, cone, 1e-12) || !cone_contains(g, cone, 1e-12)) return rep;

    auto info_of = [&](const Element& h) {
        Data d;
        d.reserve(at_zero.size());
        for (const Measurement& m : at_zero) d.push_back(apply_measurement(m, h));
        return d;
    };
    Data df = info_of(f), dg = info_of(g);
    for (std::size_t i = 0; i < df.size(); ++i)
        if (std::abs(df[i] - dg[i]) > 1e-12) return rep;  // seeds not information-matched

    Element sg = S(g);
    Element diff = std::visit(
        [&](const auto& a) -> Element {
            using T = std::decay_t<decltype(a)>;
            const auto& b = std::get<T>(sg);
            if constexpr (std::is_same_v<T, PWLinear>) return pwl_lincomb(1.0, a, -1.0, b);
            else if constexpr (std::is_same_v<T, VectorElem>) return VectorElem{a.v - b.v, a.real_field};
            else if constexpr (std::is_same_v<T, TrigPoly>) return trig_lincomb(1.0, a, -1.0, b);
            else throw IncompatibleKind("unsolvability demo: block seeds unsupported");
        },
        S(f));
    rep.seed_gap = minkowski_functional(out_norm, diff);
    if (rep.seed_gap <= 0.0) return rep;

    for (double eps : eps_levels) {
        UnsolvabilityLevel lvl;
        lvl.epsilon = eps;
        lvl.lambda = 2.0 * eps / rep.seed_gap;
        lvl.gap = lvl.lambda * rep.seed_gap;
        rep.levels.push_back(lvl);
    }
    rep.conclusive = true;
    return rep;
}

}  // namespace ibc
