// Exact pure-state and density-matrix simulation of the {RY, RZ, CNOT}
// gate set, plus entanglement and purity observables.
//
// Basis convention: qubit 0 is the most-significant bit of the amplitude
// index, fixed globally so Hamming weights and d_eff counts are unambiguous.

#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace aheft {

using cxd = std::complex<double>;

constexpr int kMaxQubits = 14;       // statevector cap
constexpr int kMaxMixedQubits = 10;  // density-matrix cap (4^10 entries)

struct PureState {
    int n_qubits = 0;
    std::vector<cxd> amplitudes;  // length 2^n_qubits

    std::size_t dim() const { return amplitudes.size(); }
};

struct MixedState {
    int n_qubits = 0;
    std::vector<cxd> matrix;  // row-major, 2^n x 2^n

    std::size_t dim() const { return std::size_t(1) << n_qubits; }
    cxd& at(std::size_t r, std::size_t c) { return matrix[r * dim() + c]; }
    const cxd& at(std::size_t r, std::size_t c) const { return matrix[r * dim() + c]; }
};

enum class GateKind { RY, RZ, CNOT };

struct GateOp {
    GateKind kind;
    int q0;              // rotation target, or CNOT control
    int q1 = -1;         // CNOT target
    double angle = 0.0;  // rotations only

    static GateOp ry(int q, double theta) { return {GateKind::RY, q, -1, theta}; }
    static GateOp rz(int q, double phi) { return {GateKind::RZ, q, -1, phi}; }
    static GateOp cnot(int control, int target) { return {GateKind::CNOT, control, target, 0.0}; }
};

// Bit of qubit q in basis index x (qubit 0 = MSB).
inline int qubit_bit(std::size_t x, int n_qubits, int q) {
    return int((x >> (n_qubits - 1 - q)) & 1u);
}
inline std::size_t qubit_mask(int n_qubits, int q) {
    return std::size_t(1) << (n_qubits - 1 - q);
}

PureState zero_state(int n_qubits);

// Rotation conventions: RY(theta) = exp(-i theta Y/2), RZ(phi) = exp(-i phi Z/2).
void apply_gate(PureState& state, const GateOp& gate);

// CNOT-RZ(phi)-CNOT on (i, j); equals exp(-i phi Z_i Z_j / 2) up to global phase.
void apply_zz_entangler(PureState& state, int i, int j, double phi);

cxd overlap(const PureState& a, const PureState& b);

double norm_sq(const PureState& state);

// Density-matrix path (selected only when depolarizing noise is on).
MixedState mixed_from_pure(const PureState& state);
void apply_gate(MixedState& rho, const GateOp& gate);
void apply_zz_entangler(MixedState& rho, int i, int j, double phi);

// rho -> (1-p) rho + p (I_4/4 on the pair) (x) Tr_pair(rho).
void apply_depolarizing_pair(MixedState& rho, int i, int j, double p);

// Partial trace onto the kept qubits (order of `keep` defines output order).
MixedState reduced_density(const PureState& state, const std::vector<int>& keep);

double vn_entropy(const MixedState& rho);  // bits; eigenvalues below 1e-12 dropped
double purity(const MixedState& rho);      // Tr(rho^2)
double trace_real(const MixedState& rho);

}  // namespace aheft
