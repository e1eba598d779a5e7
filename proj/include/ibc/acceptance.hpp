#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace ibc {

/// One acceptance criterion outcome; `detail` lists the first failures.
struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

CriterionResult run_criterion(int id, std::uint64_t seed = 42);
std::vector<CriterionResult> run_all_criteria(std::uint64_t seed = 42);

/// "criterion <id> (<name>): pass|FAIL [detail] (<seconds>s)"
std::string format_criterion(const CriterionResult& r);

}  // namespace ibc
