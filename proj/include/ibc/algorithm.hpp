#pragma once

#include "ibc/measurement.hpp"

#include <functional>

namespace ibc {

struct TerminationFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Adaptive information mapping: at step j (1-based), `select` picks the
/// next measurement from the data gathered so far; `stop` decides after
/// each measurement whether the data tuple is complete. The hard cap
/// n_max guarantees termination.
struct InformationMap {
    std::function<Measurement(std::size_t j, const Data& prior)> select;
    std::function<bool(const Data& data)> stop;
    std::size_t n_max = 1000000;
    bool non_adaptive = false;
};

/// Non-adaptive map from a fixed measurement list.
InformationMap make_nonadaptive(std::vector<Measurement> measurements);

struct AdaptiveAlgorithm {
    InformationMap info;
    std::function<Element(const Data&)> recovery;
};

struct CostRecord {
    std::vector<std::pair<Measurement, Scalar>> log;
    std::size_t n() const { return log.size(); }
};

/// Executes the measurement loop and applies the recovery map.
std::pair<Element, CostRecord> run_algorithm(const AdaptiveAlgorithm& alg, const Element& f);

/// Data tuple collected by the information map alone.
std::pair<Data, CostRecord> run_information(const InformationMap& info, const Element& f);

}  // namespace ibc
