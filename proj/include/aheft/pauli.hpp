// Pauli-sum Hamiltonians and expectation values. Expectation is computed
// term-by-term via Pauli action on amplitudes (no dense matrix), so the
// same path serves N = 14.

#pragma once

#include <string>
#include <vector>

#include "aheft/state.hpp"

namespace aheft {

struct PauliString {
    double coefficient = 0.0;
    std::string letters;  // length N over {I, X, Y, Z}
};

struct PauliSum {
    int n_qubits = 0;
    std::vector<PauliString> terms;
};

// TFIM (PBC): -sum Z_i Z_{(i+1)%N} - sum X_i, J = h = 1.
// The N=2 wrap bond is stored twice, exactly as the summation states.
PauliSum build_tfim(int n_qubits);

// Isotropic Heisenberg chain (PBC): sum (X_i X_{i+1} + Y_i Y_{i+1} + Z_i Z_{i+1}).
PauliSum build_xxz(int n_qubits);

double expectation(const PauliSum& h, const PureState& state);
double expectation(const PauliSum& h, const MixedState& rho);

// Apply H to a vector: out += H v (out must be zeroed by the caller).
void apply_pauli_sum(const PauliSum& h, const std::vector<cxd>& v, std::vector<cxd>& out);

// Sum of |coefficients|; upper bound on the operator norm (the B of kappa_lb).
double op_norm_bound(const PauliSum& h);

}  // namespace aheft
