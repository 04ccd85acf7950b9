#include "aheft/gradients.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace aheft {

namespace {

constexpr double kHalfPi = 1.5707963267948966192313216916398;

// Expectation of one Pauli term on a pure state.
double term_expectation(const PauliString& term, int n_qubits, const PureState& state) {
    PauliSum one;
    one.n_qubits = n_qubits;
    one.terms = {{1.0, term.letters}};
    return expectation(one, state);
}

// One shifted-cost estimate from `shots` measurement outcomes per term.
double sampled_cost(const AnsatzSpec& spec, const ParamVector& theta, const PauliSum& h,
                    long shots, RngStream rng) {
    const PureState state = run_circuit(spec, theta);
    double cost = 0.0;
    for (std::size_t ti = 0; ti < h.terms.size(); ++ti) {
        const auto& term = h.terms[ti];
        bool identity = true;
        for (char c : term.letters)
            if (c != 'I') { identity = false; break; }
        if (identity) {
            cost += term.coefficient;  // <I> = 1 exactly, nothing to sample
            continue;
        }
        const double exp_p = term_expectation(term, h.n_qubits, state);
        const double p_plus = std::clamp(0.5 * (1.0 + exp_p), 0.0, 1.0);
        RngStream term_rng = rng.substream({ti});
        long plus = 0;
        for (long s = 0; s < shots; ++s)
            if (term_rng.uniform() < p_plus) ++plus;
        cost += term.coefficient * (2.0 * double(plus) / double(shots) - 1.0);
    }
    return cost;
}

}  // namespace

double energy(const AnsatzSpec& spec, const ParamVector& theta, const PauliSum& h,
              double noise_p) {
    if (h.n_qubits != spec.n_qubits) throw std::length_error("energy: qubit count mismatch");
    if (noise_p == 0.0) return expectation(h, run_circuit(spec, theta));
    return expectation(h, run_circuit_noisy(spec, theta, noise_p));
}

GradientVector gradient_exact(const AnsatzSpec& spec, const ParamVector& theta,
                              const PauliSum& h, double noise_p) {
    const int count = param_count(spec);
    GradientVector grad(static_cast<std::size_t>(count));
    ParamVector shifted = theta;
    for (int j = 0; j < count; ++j) {
        shifted[std::size_t(j)] = theta[std::size_t(j)] + kHalfPi;
        const double plus = energy(spec, shifted, h, noise_p);
        shifted[std::size_t(j)] = theta[std::size_t(j)] - kHalfPi;
        const double minus = energy(spec, shifted, h, noise_p);
        shifted[std::size_t(j)] = theta[std::size_t(j)];
        grad[std::size_t(j)] = 0.5 * (plus - minus);
    }
    return grad;
}

GradientVector gradient_sampled(const AnsatzSpec& spec, const ParamVector& theta,
                                const PauliSum& h, long shots, RngStream& rng) {
    if (shots <= 0) throw std::domain_error("shots must be >= 1");
    const int count = param_count(spec);
    GradientVector grad(static_cast<std::size_t>(count));
    ParamVector shifted = theta;
    for (int j = 0; j < count; ++j) {
        // per-shift substreams keep the reduction order-independent
        shifted[std::size_t(j)] = theta[std::size_t(j)] + kHalfPi;
        const double plus = sampled_cost(spec, shifted, h, shots,
                                         rng.substream({std::uint64_t(j), 0}));
        shifted[std::size_t(j)] = theta[std::size_t(j)] - kHalfPi;
        const double minus = sampled_cost(spec, shifted, h, shots,
                                          rng.substream({std::uint64_t(j), 1}));
        shifted[std::size_t(j)] = theta[std::size_t(j)];
        grad[std::size_t(j)] = 0.5 * (plus - minus);
    }
    return grad;
}

double grad_norm2(const GradientVector& g) {
    double acc = 0.0;
    for (double v : g) acc += v * v;
    return std::sqrt(acc);
}

}  // namespace aheft
