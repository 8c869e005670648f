#pragma once

#include <string>
#include <vector>

namespace tsi {

struct SuiteResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0;
};

// the twelve release checks; each is deterministic and self-contained
SuiteResult run_criterion(int id);
std::vector<SuiteResult> run_suite();

} // namespace tsi
