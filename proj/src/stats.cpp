#include "aheft/stats.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace aheft {

namespace {

struct SampleStats {
    double mean;
    double var;  // unbiased
    double n;
};

SampleStats summarize(const std::vector<double>& xs) {
    if (xs.size() < 2) throw std::domain_error("welch_test needs >= 2 entries per sample");
    const double n = double(xs.size());
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= n;
    double var = 0.0;
    for (double x : xs) var += (x - mean) * (x - mean);
    var /= (n - 1.0);
    return {mean, var, n};
}

// Continued fraction for the incomplete beta (Lentz), O(1) valued.
double betacf(double a, double b, double x) {
    constexpr int kMaxIter = 300;
    constexpr double kEps = 3e-16;
    constexpr double kTiny = 1e-300;
    const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps) break;
    }
    return h;
}

}  // namespace

double log_reg_inc_beta(double a, double b, double x) {
    if (x <= 0.0) return -std::numeric_limits<double>::infinity();
    if (x >= 1.0) return 0.0;
    const double log_prefactor = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                                 a * std::log(x) + b * std::log1p(-x);
    if (x < (a + 1.0) / (a + b + 2.0))
        return log_prefactor + std::log(betacf(a, b, x) / a);
    // complement region: value is O(1), no underflow concern
    const double comp = std::exp(std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                                 b * std::log1p(-x) + a * std::log(x)) *
                        betacf(b, a, 1.0 - x) / b;
    return std::log1p(-comp);
}

StatTestResult welch_test(const std::vector<double>& a, const std::vector<double>& b) {
    const SampleStats sa = summarize(a), sb = summarize(b);
    StatTestResult res;
    res.cohens_d = cohens_d(a, b);

    if (sa.var == 0.0 && sb.var == 0.0) {
        res.dof = sa.n + sb.n - 2.0;
        if (sa.mean == sb.mean) {
            res.t_stat = 0.0;
            res.log10_p = 0.0;
        } else {
            res.t_stat = std::copysign(std::numeric_limits<double>::infinity(), sa.mean - sb.mean);
            res.log10_p = kLog10PFloor;
            res.p_floor_applied = true;
        }
        return res;
    }

    const double se2 = sa.var / sa.n + sb.var / sb.n;
    res.t_stat = (sa.mean - sb.mean) / std::sqrt(se2);
    res.dof = se2 * se2 /
              (sa.var * sa.var / (sa.n * sa.n * (sa.n - 1.0)) +
               sb.var * sb.var / (sb.n * sb.n * (sb.n - 1.0)));

    // two-sided p = I_{nu/(nu+t^2)}(nu/2, 1/2)
    const double t2 = res.t_stat * res.t_stat;
    const double x = res.dof / (res.dof + t2);
    const double log10_p = log_reg_inc_beta(0.5 * res.dof, 0.5, x) / std::log(10.0);
    if (log10_p < kLog10PFloor || !std::isfinite(log10_p)) {
        res.log10_p = kLog10PFloor;
        res.p_floor_applied = true;
    } else {
        res.log10_p = std::min(log10_p, 0.0);
    }
    return res;
}

double cohens_d(const std::vector<double>& a, const std::vector<double>& b) {
    const SampleStats sa = summarize(a), sb = summarize(b);
    const double pooled_var =
        ((sa.n - 1.0) * sa.var + (sb.n - 1.0) * sb.var) / (sa.n + sb.n - 2.0);
    if (pooled_var == 0.0) {
        if (sa.mean == sb.mean) return 0.0;
        return std::copysign(std::numeric_limits<double>::infinity(), sa.mean - sb.mean);
    }
    return (sa.mean - sb.mean) / std::sqrt(pooled_var);
}

}  // namespace aheft
