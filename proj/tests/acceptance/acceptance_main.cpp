#include "qwres/acceptance.hpp"

#include <cstdio>

int main() {
    int failed = 0;
    for (int id = 1; id <= 11; ++id) {
        const qwres::CriterionResult r = qwres::run_criterion(id);
        std::printf("%s\n", qwres::format_result(r).c_str());
        std::fflush(stdout);
        if (!r.pass) ++failed;
    }
    std::printf("%d/11 criteria passed\n", 11 - failed);
    return failed == 0 ? 0 : 1;
}
