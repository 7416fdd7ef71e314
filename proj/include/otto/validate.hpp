#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace otto {

struct CheckResult {
    std::string name;
    bool passed = false;
    double measured = 0.0;   // worst observed deviation (or value)
    double tolerance = 0.0;
    std::string detail;
};

// Oracle-equivalence and invariant checks over seeded random inputs.
std::vector<CheckResult> run_validation_suite();

// Aligned pass/fail table; returns true when every check passed.
bool print_validation_table(std::ostream& out, const std::vector<CheckResult>& results);

}  // namespace otto
