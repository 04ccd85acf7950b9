// Acceptance binary: one pass/fail line per criterion, nonzero exit on any
// failure. Registered in ctest as the `acceptance` test.

#include <iostream>

#include "aheft/acceptance.hpp"

int main() {
    const auto results = aheft::run_acceptance_suite(std::cout);
    int failed = 0;
    for (const auto& r : results)
        if (!r.passed) ++failed;
    std::cout << (failed == 0 ? "ALL PASS" : std::to_string(failed) + " FAILED") << " ("
              << results.size() << " criteria)\n";
    return failed == 0 ? 0 : 1;
}
