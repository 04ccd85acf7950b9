// Exact parameter-shift gradients and finite-shot stochastic estimates.
//
// Every gate generator (Y/2, Z/2, ZZ/2) has eigenvalues +-1/2, so the
// two-term +-pi/2 shift rule is exact for rotation and entangler
// parameters alike.

#pragma once

#include "aheft/ansatz.hpp"
#include "aheft/pauli.hpp"
#include "aheft/rng.hpp"

namespace aheft {

using GradientVector = std::vector<double>;

// Cost <psi(theta)|H|psi(theta)>. noise_p = 0 selects the statevector
// path; noise_p > 0 the density-matrix path (capped at 10 qubits).
double energy(const AnsatzSpec& spec, const ParamVector& theta, const PauliSum& h,
              double noise_p = 0.0);

// d_j C = (C(theta + pi/2 e_j) - C(theta - pi/2 e_j)) / 2.
GradientVector gradient_exact(const AnsatzSpec& spec, const ParamVector& theta,
                              const PauliSum& h, double noise_p = 0.0);

// Parameter-shift with each shifted cost estimated from `shots` Bernoulli
// measurement outcomes per Pauli term. Unbiased estimator of gradient_exact.
GradientVector gradient_sampled(const AnsatzSpec& spec, const ParamVector& theta,
                                const PauliSum& h, long shots, RngStream& rng);

double grad_norm2(const GradientVector& g);

}  // namespace aheft
