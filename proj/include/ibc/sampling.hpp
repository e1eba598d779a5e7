#pragma once

#include "ibc/cone.hpp"

#include <random>

namespace ibc {

struct InputSetSpec {
    enum class Kind { Ball, Cone };
    Kind kind = Kind::Ball;
    double radius = 1.0;
    NormSpec norm = NormSpec::l2();        // for Ball
    std::shared_ptr<ConeSpec> cone;        // for Cone

    static InputSetSpec ball(double radius, NormSpec norm);
    static InputSetSpec cone_set(ConeSpec cone);
};

bool set_contains(const InputSetSpec& set, const Element& f, double tol = 1e-9);

struct SampledError {
    double value = 0.0;
    int rejected = 0;
};

/// Sampled lower bound on the worst-case error sup_{f in set} ||S(f)-A(f)||_G.
/// The sampler is indexed by trial for determinism; samples outside the set
/// are rejected and counted. Trials are evaluated in parallel by default.
SampledError worst_case_error_sampled(const AdaptiveAlgorithm& alg,
                                      const std::function<Element(const Element&)>& S,
                                      const NormSpec& out_norm, const InputSetSpec& set,
                                      const std::function<Element(std::uint64_t trial)>& sampler,
                                      int trials, bool parallel = true);

/// Serial reference for the parallel evaluation kernel (kept for testing).
double max_error_over_samples_serial(const AdaptiveAlgorithm& alg,
                                     const std::function<Element(const Element&)>& S,
                                     const NormSpec& out_norm, const std::vector<Element>& samples);
double max_error_over_samples_omp(const AdaptiveAlgorithm& alg,
                                  const std::function<Element(const Element&)>& S,
                                  const NormSpec& out_norm, const std::vector<Element>& samples);

/// Sampled relative error sup_{f != 0} ||S(f)-A(f)||_G / ||f||_F over the
/// given directions, each tested at scales {1e-3, 1, 1e3}.
double relative_error_sampled(const AdaptiveAlgorithm& alg,
                              const std::function<Element(const Element&)>& S,
                              const NormSpec& out_norm, const NormSpec& in_norm,
                              const std::vector<Element>& directions,
                              const std::vector<double>& scales = {1e-3, 1.0, 1e3});

}  // namespace ibc
