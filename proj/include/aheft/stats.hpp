// Welch's t-test and Cohen's d. p-values are carried in log10 space so the
// extreme-tail regime stays representable; a conservative floor of 1e-170
// is applied when the tail underflows past it.

#pragma once

#include <vector>

namespace aheft {

struct StatTestResult {
    double t_stat = 0.0;
    double dof = 0.0;        // Welch-Satterthwaite degrees of freedom
    double log10_p = 0.0;    // two-sided
    bool p_floor_applied = false;
    double cohens_d = 0.0;
};

constexpr double kLog10PFloor = -170.0;

StatTestResult welch_test(const std::vector<double>& a, const std::vector<double>& b);

// (mean a - mean b) / pooled standard deviation (n-1 weights).
// Zero pooled deviation yields a +-infinity sentinel (0 for equal means).
double cohens_d(const std::vector<double>& a, const std::vector<double>& b);

// log(I_x(a, b)), regularized incomplete beta, stable for tiny x.
double log_reg_inc_beta(double a, double b, double x);

}  // namespace aheft
