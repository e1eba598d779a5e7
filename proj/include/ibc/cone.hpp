#pragma once

#include "ibc/algorithm.hpp"

namespace ibc {

struct UnsolvableAtCap : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Cone C_t = { f : ||f||_F <= t ||Tf||_H } with inflation factor t.
struct ConeSpec {
    std::function<Element(const Element&)> T;
    NormSpec norm_f = NormSpec::l2();
    NormSpec norm_h = NormSpec::l2();
    double t = 1.0;
};

bool cone_contains(const Element& f, const ConeSpec& cone, double tol = 0.0);

/// Family of homogeneous algorithms indexed by a cardinality parameter k,
/// with a certified nonincreasing worst-case error bound e(k) on the unit
/// ball. `cost_of` maps the index to the actual measurement count (it is
/// the identity unless an instance uses a coarser index, e.g. a truncation
/// level whose realization needs a specific lattice size).
struct SolverFamily {
    std::function<AdaptiveAlgorithm(std::size_t k)> build;
    std::function<double(std::size_t k)> error_bound;
    std::function<std::size_t(std::size_t k)> cost_of;  // may be null => identity
    std::size_t k_min = 1;
};

/// Smallest k >= k_min with e(k) <= eps / (2 t pilot_norm), found by
/// doubling followed by bisection. Throws UnsolvableAtCap if no k within
/// n_max reaches the threshold.
std::size_t required_cardinality(double eps, double t, double pilot_norm,
                                 const std::function<double(std::size_t)>& error_bound,
                                 std::size_t k_min = 1, std::size_t n_max = 1000000);

/// First-stage algorithm Q approximating T with a fixed number m of
/// measurements and certified worst-case error on the unit ball.
struct PilotAlgorithm {
    AdaptiveAlgorithm alg;
    std::size_t m = 0;
    double ball_error = 0.0;
};

/// Two-step adaptive-cardinality algorithm: run the pilot, read off
/// ||Q_m f||_H, and dispatch a second-stage algorithm from the family
/// whose certified error meets eps / (2 t ||Q_m f||_H). A pilot value of
/// exactly zero certifies f = 0 and short-circuits to `zero_output`.
AdaptiveAlgorithm two_step_algorithm(const PilotAlgorithm& pilot, const SolverFamily& family,
                                     const ConeSpec& cone, double eps, Element zero_output);

struct TwoStepReport {
    double epsilon = 0.0;
    double t = 0.0;
    std::size_t m = 0;
    std::size_t k = 0;
    double pilot_norm = 0.0;
    double residual_norm = 0.0;
    double bound_rhs = 0.0;  // eps / (2 t pilot_norm), the threshold met by e(k)
};

/// Runs the two-step algorithm on f and records the quantities entering
/// the cost bound. S and out_norm define the residual ||Sf - Af||_G.
TwoStepReport run_two_step_report(const PilotAlgorithm& pilot, const SolverFamily& family,
                                  const ConeSpec& cone, double eps, const Element& f,
                                  const std::function<Element(const Element&)>& S,
                                  const NormSpec& out_norm, const Element& zero_output);

/// N_r: feeds r * (data so far) to the original selector and stop rule,
/// acting as if the input were r f.
InformationMap rescale_information(const InformationMap& info, double r);

struct UnsolvabilityLevel {
    double epsilon = 0.0;
    double lambda = 0.0;  // scale applied to the seed pair
    double gap = 0.0;     // ||S f - S g|| for the scaled pair
};

struct UnsolvabilityReport {
    bool conclusive = false;
    double seed_gap = 0.0;
    std::vector<UnsolvabilityLevel> levels;
};

/// Scales a matching-information seed pair inside the cone to exhibit, for
/// each requested error level, solution gaps >= 2 eps under the fixed
/// information map. Input sets that are not cones are refused.
struct InputSetSpec;  // see sampling.hpp
UnsolvabilityReport fixed_cardinality_unsolvability_demo(
    const InputSetSpec& set, const InformationMap& info,
    const std::function<Element(const Element&)>& S, const NormSpec& out_norm,
    const std::function<std::optional<std::pair<Element, Element>>(const std::vector<Measurement>&)>&
        seed_provider,
    const std::vector<double>& eps_levels);

}  // namespace ibc
