#include "ibc/acceptance.hpp"

#include <cstdio>

int main() {
    bool all = true;
    for (const auto& res : ibc::run_all_criteria(42)) {
        std::printf("%s\n", ibc::format_criterion(res).c_str());
        std::fflush(stdout);
        all = all && res.pass;
    }
    return all ? 0 : 1;
}
