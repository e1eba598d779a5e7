#include "ibc/algorithm.hpp"

namespace ibc {

InformationMap make_nonadaptive(std::vector<Measurement> measurements) {
    auto list = std::make_shared<std::vector<Measurement>>(std::move(measurements));
    InformationMap info;
    info.select = [list](std::size_t j, const Data&) -> Measurement {
        if (j < 1 || j > list->size()) throw std::out_of_range("non-adaptive select: step out of range");
        return (*list)[j - 1];
    };
    info.stop = [list](const Data& data) { return data.size() >= list->size(); };
    info.non_adaptive = true;
    return info;
}

std::pair<Data, CostRecord> run_information(const InformationMap& info, const Element& f) {
    Data data;
    CostRecord cost;
    if (info.stop(data)) return {data, cost};  // empty information allowed
    for (std::size_t j = 1; j <= info.n_max; ++j) {
        Measurement m = info.select(j, data);
        Scalar y = apply_measurement(m, f);
        data.push_back(y);
        cost.log.emplace_back(std::move(m), y);
        if (info.stop(data)) return {data, cost};
    }
    throw TerminationFailure("information map did not stop within n_max steps");
}

std::pair<Element, CostRecord> run_algorithm(const AdaptiveAlgorithm& alg, const Element& f) {
    auto [data, cost] = run_information(alg.info, f);
    return {alg.recovery(data), std::move(cost)};
}

}  // namespace ibc
