#include "aheft/state.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace aheft {

namespace {

void check_qubit(int n_qubits, int q) {
    if (q < 0 || q >= n_qubits) throw std::out_of_range("qubit index out of range");
}

// Apply a 2x2 unitary on qubit q of a length-2^n vector (contiguous or strided).
void apply_1q(std::vector<cxd>& v, int n_qubits, int q, const cxd u[2][2],
              std::size_t base, std::size_t stride, std::size_t count_bits) {
    const std::size_t mask = qubit_mask(n_qubits, q);
    const std::size_t dim = std::size_t(1) << count_bits;
    for (std::size_t x = 0; x < dim; ++x) {
        if (x & mask) continue;
        cxd& a0 = v[base + x * stride];
        cxd& a1 = v[base + (x | mask) * stride];
        const cxd t0 = u[0][0] * a0 + u[0][1] * a1;
        const cxd t1 = u[1][0] * a0 + u[1][1] * a1;
        a0 = t0;
        a1 = t1;
    }
}

void ry_matrix(double theta, cxd u[2][2]) {
    const double c = std::cos(0.5 * theta), s = std::sin(0.5 * theta);
    u[0][0] = c; u[0][1] = -s;
    u[1][0] = s; u[1][1] = c;
}

void rz_matrix(double phi, cxd u[2][2]) {
    u[0][0] = std::polar(1.0, -0.5 * phi); u[0][1] = 0.0;
    u[1][0] = 0.0; u[1][1] = std::polar(1.0, 0.5 * phi);
}

void gate_matrix(const GateOp& gate, cxd u[2][2]) {
    if (gate.kind == GateKind::RY) ry_matrix(gate.angle, u);
    else rz_matrix(gate.angle, u);
}

Eigen::Map<const Eigen::MatrixXcd> as_matrix(const MixedState& rho) {
    const auto d = Eigen::Index(rho.dim());
    return {rho.matrix.data(), d, d};
}

}  // namespace

PureState zero_state(int n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits)
        throw std::length_error("n_qubits must be in [1, 14]");
    PureState s;
    s.n_qubits = n_qubits;
    s.amplitudes.assign(std::size_t(1) << n_qubits, cxd(0.0));
    s.amplitudes[0] = 1.0;
    return s;
}

void apply_gate(PureState& state, const GateOp& gate) {
    const int n = state.n_qubits;
    check_qubit(n, gate.q0);
    if (gate.kind == GateKind::CNOT) {
        check_qubit(n, gate.q1);
        if (gate.q0 == gate.q1) throw std::invalid_argument("CNOT control equals target");
        const std::size_t cmask = qubit_mask(n, gate.q0);
        const std::size_t tmask = qubit_mask(n, gate.q1);
        for (std::size_t x = 0; x < state.dim(); ++x) {
            if ((x & cmask) && !(x & tmask)) std::swap(state.amplitudes[x], state.amplitudes[x | tmask]);
        }
        return;
    }
    cxd u[2][2];
    gate_matrix(gate, u);
    apply_1q(state.amplitudes, n, gate.q0, u, 0, 1, std::size_t(n));
}

void apply_zz_entangler(PureState& state, int i, int j, double phi) {
    apply_gate(state, GateOp::cnot(i, j));
    apply_gate(state, GateOp::rz(j, phi));
    apply_gate(state, GateOp::cnot(i, j));
}

cxd overlap(const PureState& a, const PureState& b) {
    if (a.n_qubits != b.n_qubits) throw std::length_error("overlap: qubit count mismatch");
    cxd acc = 0.0;
    for (std::size_t x = 0; x < a.dim(); ++x) acc += std::conj(a.amplitudes[x]) * b.amplitudes[x];
    return acc;
}

double norm_sq(const PureState& state) {
    double acc = 0.0;
    for (const auto& a : state.amplitudes) acc += std::norm(a);
    return acc;
}

MixedState mixed_from_pure(const PureState& state) {
    if (state.n_qubits > kMaxMixedQubits)
        throw std::length_error("density-matrix path capped at 10 qubits");
    MixedState rho;
    rho.n_qubits = state.n_qubits;
    const std::size_t d = state.dim();
    rho.matrix.assign(d * d, cxd(0.0));
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c)
            rho.matrix[r * d + c] = state.amplitudes[r] * std::conj(state.amplitudes[c]);
    return rho;
}

void apply_gate(MixedState& rho, const GateOp& gate) {
    const int n = rho.n_qubits;
    const std::size_t d = rho.dim();
    check_qubit(n, gate.q0);
    if (gate.kind == GateKind::CNOT) {
        check_qubit(n, gate.q1);
        if (gate.q0 == gate.q1) throw std::invalid_argument("CNOT control equals target");
        const std::size_t cmask = qubit_mask(n, gate.q0);
        const std::size_t tmask = qubit_mask(n, gate.q1);
        for (std::size_t r = 0; r < d; ++r) {  // rows: U rho
            if ((r & cmask) && !(r & tmask))
                for (std::size_t c = 0; c < d; ++c) std::swap(rho.at(r, c), rho.at(r | tmask, c));
        }
        for (std::size_t c = 0; c < d; ++c) {  // cols: rho U^dag
            if ((c & cmask) && !(c & tmask))
                for (std::size_t r = 0; r < d; ++r) std::swap(rho.at(r, c), rho.at(r, c | tmask));
        }
        return;
    }
    cxd u[2][2];
    gate_matrix(gate, u);
    // U rho: apply to each column vector.
    for (std::size_t c = 0; c < d; ++c) apply_1q(rho.matrix, n, gate.q0, u, c, d, std::size_t(n));
    // rho U^dag: apply conj(U) to each row vector.
    const cxd uc[2][2] = {{std::conj(u[0][0]), std::conj(u[0][1])},
                          {std::conj(u[1][0]), std::conj(u[1][1])}};
    for (std::size_t r = 0; r < d; ++r) apply_1q(rho.matrix, n, gate.q0, uc, r * d, 1, std::size_t(n));
}

void apply_zz_entangler(MixedState& rho, int i, int j, double phi) {
    apply_gate(rho, GateOp::cnot(i, j));
    apply_gate(rho, GateOp::rz(j, phi));
    apply_gate(rho, GateOp::cnot(i, j));
}

void apply_depolarizing_pair(MixedState& rho, int i, int j, double p) {
    if (p < 0.0 || p > 1.0) throw std::domain_error("depolarizing probability must be in [0, 1]");
    const int n = rho.n_qubits;
    check_qubit(n, i);
    check_qubit(n, j);
    if (i == j) throw std::invalid_argument("depolarizing pair must be distinct qubits");
    if (p == 0.0) return;
    const std::size_t d = rho.dim();
    const std::size_t mi = qubit_mask(n, i), mj = qubit_mask(n, j);
    const std::size_t rest_mask = (d - 1) & ~(mi | mj);
    // Tr_pair(rho) indexed by the rest bits in place.
    std::vector<cxd> rest(d * d, cxd(0.0));  // sparse over rest-bit patterns only
    for (std::size_t r = 0; r < d; ++r) {
        if (r & (mi | mj)) continue;
        for (std::size_t c = 0; c < d; ++c) {
            if (c & (mi | mj)) continue;
            cxd acc = 0.0;
            for (int bi = 0; bi < 2; ++bi)
                for (int bj = 0; bj < 2; ++bj) {
                    const std::size_t pb = (bi ? mi : 0) | (bj ? mj : 0);
                    acc += rho.at(r | pb, c | pb);
                }
            rest[r * d + c] = acc;
        }
    }
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c) {
            cxd mixed = 0.0;
            if ((r & (mi | mj)) == (c & (mi | mj)))
                mixed = rest[(r & rest_mask) * d + (c & rest_mask)] * 0.25;
            rho.at(r, c) = (1.0 - p) * rho.at(r, c) + p * mixed;
        }
}

MixedState reduced_density(const PureState& state, const std::vector<int>& keep) {
    if (keep.empty()) throw std::domain_error("reduced_density: keep set must be nonempty");
    const int n = state.n_qubits;
    for (int q : keep) check_qubit(n, q);
    const int k = int(keep.size());
    MixedState rho;
    rho.n_qubits = k;
    const std::size_t kd = std::size_t(1) << k;
    rho.matrix.assign(kd * kd, cxd(0.0));

    std::size_t keep_mask = 0;
    for (int q : keep) keep_mask |= qubit_mask(n, q);
    std::vector<std::size_t> env_bits;
    for (int b = 0; b < n; ++b)
        if (!(keep_mask & (std::size_t(1) << b))) env_bits.push_back(std::size_t(1) << b);

    auto full_index = [&](std::size_t kept, std::size_t env_pattern) {
        std::size_t x = 0;
        for (int a = 0; a < k; ++a)
            if ((kept >> (k - 1 - a)) & 1u) x |= qubit_mask(n, keep[a]);
        for (std::size_t e = 0; e < env_bits.size(); ++e)
            if ((env_pattern >> e) & 1u) x |= env_bits[e];
        return x;
    };

    const std::size_t env_dim = std::size_t(1) << env_bits.size();
    for (std::size_t r = 0; r < kd; ++r)
        for (std::size_t c = 0; c < kd; ++c) {
            cxd acc = 0.0;
            for (std::size_t e = 0; e < env_dim; ++e)
                acc += state.amplitudes[full_index(r, e)] * std::conj(state.amplitudes[full_index(c, e)]);
            rho.matrix[r * kd + c] = acc;
        }
    return rho;
}

double vn_entropy(const MixedState& rho) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(as_matrix(rho), Eigen::EigenvaluesOnly);
    double s = 0.0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
        const double lam = es.eigenvalues()[i];
        if (lam > 1e-12) s -= lam * std::log2(lam);
    }
    return s;
}

double purity(const MixedState& rho) {
    double acc = 0.0;
    const std::size_t d = rho.dim();
    for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c) acc += std::norm(rho.at(r, c));
    return acc;  // Tr(rho^2) = sum |rho_rc|^2 for Hermitian rho
}

double trace_real(const MixedState& rho) {
    double acc = 0.0;
    for (std::size_t r = 0; r < rho.dim(); ++r) acc += rho.at(r, r).real();
    return acc;
}

}  // namespace aheft
