// Circuit builders for the EFT-localized spin ansatz and the
// hardware-efficient baseline, plus initialization samplers.

#pragma once

#include <vector>

#include "aheft/rng.hpp"
#include "aheft/state.hpp"

namespace aheft {

enum class AnsatzKind { HeftSpin, Hea };

struct AnsatzSpec {
    AnsatzKind kind = AnsatzKind::HeftSpin;
    int n_qubits = 0;
    int layers = 0;
};

using ParamVector = std::vector<double>;

// One entry per parametrized slot or fixed CNOT, in application order.
struct CircuitOp {
    enum class Kind { Ry, Cnot, ZzEntangler };
    Kind kind;
    int q0;
    int q1 = -1;          // entangler partner / CNOT target
    int param_index = -1; // -1 for fixed gates
};

void validate_spec(const AnsatzSpec& spec);

// L(2N-1) for the spin ansatz, L*N for the HEA baseline.
int param_count(const AnsatzSpec& spec);

// Spin layer: RY on all qubits, then ZZ entanglers on the open chain.
// HEA layer: RY on all qubits, then an open CNOT chain.
std::vector<CircuitOp> build_circuit(const AnsatzSpec& spec);

// Same circuit expanded to primitive {RY, RZ, CNOT} gates for given angles.
std::vector<GateOp> primitive_gates(const AnsatzSpec& spec, const ParamVector& theta);

PureState run_circuit(const AnsatzSpec& spec, const ParamVector& theta);

// Density-matrix path; a two-qubit depolarizing channel follows each CNOT.
MixedState run_circuit_noisy(const AnsatzSpec& spec, const ParamVector& theta, double noise_p);

// Spin ansatz: i.i.d. N(0, sigma^2) over all parameters (rotations and
// entanglers share the single scale). HEA: i.i.d. uniform on [0, 2pi).
ParamVector init_params(const AnsatzSpec& spec, double sigma, RngStream& rng);

}  // namespace aheft
