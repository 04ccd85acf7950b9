// Desk-scale acceptance and invariants suites, printed one line per check.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace aheft {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
};

// Runs the 12 acceptance criteria in order, printing "PASS"/"FAIL" lines
// to `out` as each completes. Returns the individual results.
std::vector<CriterionResult> run_acceptance_suite(std::ostream& out);

// Lighter cross-cutting invariant checks (normalization, antisymmetry,
// schema round trips). Same reporting convention.
std::vector<CriterionResult> run_invariants_suite(std::ostream& out);

}  // namespace aheft
