#include "aheft/ansatz.hpp"

#include <stdexcept>

namespace aheft {

void validate_spec(const AnsatzSpec& spec) {
    if (spec.n_qubits < 2 || spec.n_qubits > kMaxQubits)
        throw std::length_error("ansatz requires 2 <= n_qubits <= 14");
    if (spec.layers < 1) throw std::length_error("ansatz requires layers >= 1");
}

int param_count(const AnsatzSpec& spec) {
    validate_spec(spec);
    if (spec.kind == AnsatzKind::HeftSpin) return spec.layers * (2 * spec.n_qubits - 1);
    return spec.layers * spec.n_qubits;
}

std::vector<CircuitOp> build_circuit(const AnsatzSpec& spec) {
    validate_spec(spec);
    std::vector<CircuitOp> ops;
    int p = 0;
    for (int layer = 0; layer < spec.layers; ++layer) {
        for (int q = 0; q < spec.n_qubits; ++q)
            ops.push_back({CircuitOp::Kind::Ry, q, -1, p++});
        if (spec.kind == AnsatzKind::HeftSpin) {
            for (int q = 0; q + 1 < spec.n_qubits; ++q)
                ops.push_back({CircuitOp::Kind::ZzEntangler, q, q + 1, p++});
        } else {
            for (int q = 0; q + 1 < spec.n_qubits; ++q)
                ops.push_back({CircuitOp::Kind::Cnot, q, q + 1, -1});
        }
    }
    return ops;
}

namespace {

void check_length(const AnsatzSpec& spec, const ParamVector& theta) {
    if (int(theta.size()) != param_count(spec))
        throw std::length_error("parameter vector length does not match ansatz");
}

}  // namespace

std::vector<GateOp> primitive_gates(const AnsatzSpec& spec, const ParamVector& theta) {
    check_length(spec, theta);
    std::vector<GateOp> gates;
    for (const auto& op : build_circuit(spec)) {
        switch (op.kind) {
            case CircuitOp::Kind::Ry:
                gates.push_back(GateOp::ry(op.q0, theta[std::size_t(op.param_index)]));
                break;
            case CircuitOp::Kind::Cnot:
                gates.push_back(GateOp::cnot(op.q0, op.q1));
                break;
            case CircuitOp::Kind::ZzEntangler:
                gates.push_back(GateOp::cnot(op.q0, op.q1));
                gates.push_back(GateOp::rz(op.q1, theta[std::size_t(op.param_index)]));
                gates.push_back(GateOp::cnot(op.q0, op.q1));
                break;
        }
    }
    return gates;
}

PureState run_circuit(const AnsatzSpec& spec, const ParamVector& theta) {
    check_length(spec, theta);
    PureState state = zero_state(spec.n_qubits);
    for (const auto& op : build_circuit(spec)) {
        switch (op.kind) {
            case CircuitOp::Kind::Ry:
                apply_gate(state, GateOp::ry(op.q0, theta[std::size_t(op.param_index)]));
                break;
            case CircuitOp::Kind::Cnot:
                apply_gate(state, GateOp::cnot(op.q0, op.q1));
                break;
            case CircuitOp::Kind::ZzEntangler:
                apply_zz_entangler(state, op.q0, op.q1, theta[std::size_t(op.param_index)]);
                break;
        }
    }
    return state;
}

MixedState run_circuit_noisy(const AnsatzSpec& spec, const ParamVector& theta, double noise_p) {
    check_length(spec, theta);
    if (noise_p < 0.0 || noise_p > 1.0) throw std::domain_error("noise_p must be in [0, 1]");
    if (spec.n_qubits > kMaxMixedQubits)
        throw std::length_error("noisy simulation capped at 10 qubits");
    MixedState rho = mixed_from_pure(zero_state(spec.n_qubits));
    for (const auto& gate : primitive_gates(spec, theta)) {
        apply_gate(rho, gate);
        if (gate.kind == GateKind::CNOT && noise_p > 0.0)
            apply_depolarizing_pair(rho, gate.q0, gate.q1, noise_p);
    }
    return rho;
}

ParamVector init_params(const AnsatzSpec& spec, double sigma, RngStream& rng) {
    ParamVector theta(static_cast<std::size_t>(param_count(spec)));
    if (spec.kind == AnsatzKind::Hea) {
        for (auto& t : theta) t = rng.uniform(0.0, 6.283185307179586476925286766559);
        return theta;
    }
    if (sigma < 0.0) throw std::domain_error("sigma must be nonnegative");
    for (auto& t : theta) t = sigma == 0.0 ? 0.0 : rng.normal(0.0, sigma);
    return theta;
}

}  // namespace aheft
