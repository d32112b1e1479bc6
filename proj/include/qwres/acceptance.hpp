#pragma once

#include <string>
#include <vector>

namespace qwres {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

// Criteria 1..11 of the acceptance suite; an exception inside a criterion
// marks it failed with the message as detail.
CriterionResult run_criterion(int id);
std::vector<CriterionResult> run_acceptance();

std::string format_result(const CriterionResult& r);

} // namespace qwres
