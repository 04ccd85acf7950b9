// Exact ground states and the reference-state gap. Dense diagonalization
// up to 10 qubits, matrix-free Lanczos with deflation above.

#pragma once

#include "aheft/pauli.hpp"
#include "aheft/state.hpp"

namespace aheft {

struct GroundSolution {
    double energy = 0.0;
    std::vector<PureState> basis;  // orthonormal ground-space basis
    double degeneracy_tol = 1e-9;  // relative to spectral range
};

GroundSolution ground_state(const PauliSum& h, double degeneracy_tol = 1e-9);

// 1 - |projection of |0^N> onto the ground space|^2, in [0, 1].
double reference_gap(const PauliSum& h);

}  // namespace aheft
