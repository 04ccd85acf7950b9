#include "aheft/pauli.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace aheft {

namespace {

struct CompiledTerm {
    double coeff;
    std::size_t flip_mask;  // X and Y positions
    std::size_t z_mask;     // Z positions
    std::size_t y_mask;     // Y positions
};

CompiledTerm compile_term(const PauliString& t, int n_qubits) {
    if (int(t.letters.size()) != n_qubits)
        throw std::length_error("Pauli string length does not match n_qubits");
    CompiledTerm c{t.coefficient, 0, 0, 0};
    for (int q = 0; q < n_qubits; ++q) {
        const std::size_t m = qubit_mask(n_qubits, q);
        switch (t.letters[q]) {
            case 'I': break;
            case 'X': c.flip_mask |= m; break;
            case 'Y': c.flip_mask |= m; c.y_mask |= m; break;
            case 'Z': c.z_mask |= m; break;
            default: throw std::invalid_argument("Pauli letter must be one of I, X, Y, Z");
        }
    }
    return c;
}

// Phase of P|x> = phase * |x ^ flip_mask>.
// Z on bit b: (-1)^b.  Y: |0> -> i|1>, |1> -> -i|0>.
cxd term_phase(const CompiledTerm& t, std::size_t x) {
    const int z_par = std::popcount(x & t.z_mask) & 1;
    const int ny = std::popcount(t.y_mask);
    const int y_ones = std::popcount(x & t.y_mask);
    // product over Y qubits of (i if bit 0 else -i) = i^ny * (-1)^{#ones}
    int quarter = (ny + 2 * y_ones + 2 * z_par) & 3;
    static const cxd units[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return units[quarter];
}

std::string identity_string(int n) { return std::string(std::size_t(n), 'I'); }

}  // namespace

PauliSum build_tfim(int n_qubits) {
    if (n_qubits < 2) throw std::domain_error("TFIM requires n_qubits >= 2");
    PauliSum h;
    h.n_qubits = n_qubits;
    for (int i = 0; i < n_qubits; ++i) {
        std::string zz = identity_string(n_qubits);
        zz[i] = 'Z';
        zz[(i + 1) % n_qubits] = 'Z';
        h.terms.push_back({-1.0, zz});
    }
    for (int i = 0; i < n_qubits; ++i) {
        std::string x = identity_string(n_qubits);
        x[i] = 'X';
        h.terms.push_back({-1.0, x});
    }
    return h;
}

PauliSum build_xxz(int n_qubits) {
    if (n_qubits < 2) throw std::domain_error("XXZ requires n_qubits >= 2");
    PauliSum h;
    h.n_qubits = n_qubits;
    for (int i = 0; i < n_qubits; ++i) {
        for (char p : {'X', 'Y', 'Z'}) {
            std::string s = identity_string(n_qubits);
            s[i] = p;
            s[(i + 1) % n_qubits] = p;
            h.terms.push_back({1.0, s});
        }
    }
    return h;
}

double expectation(const PauliSum& h, const PureState& state) {
    if ((std::size_t(1) << h.n_qubits) != state.dim())
        throw std::length_error("expectation: dimension mismatch");
    cxd acc = 0.0;
    for (const auto& term : h.terms) {
        const CompiledTerm t = compile_term(term, h.n_qubits);
        cxd e = 0.0;
        for (std::size_t x = 0; x < state.dim(); ++x)
            e += term_phase(t, x) * std::conj(state.amplitudes[x ^ t.flip_mask]) * state.amplitudes[x];
        acc += t.coeff * e;
    }
    return acc.real();
}

double expectation(const PauliSum& h, const MixedState& rho) {
    if (h.n_qubits != rho.n_qubits) throw std::length_error("expectation: dimension mismatch");
    // P|x> = phase(x)|x ^ flip|, so Tr(P rho) = sum_x phase(x) rho[x, x ^ flip].
    cxd acc = 0.0;
    const std::size_t d = rho.dim();
    for (const auto& term : h.terms) {
        const CompiledTerm t = compile_term(term, h.n_qubits);
        cxd e = 0.0;
        for (std::size_t x = 0; x < d; ++x) e += term_phase(t, x) * rho.at(x, x ^ t.flip_mask);
        acc += t.coeff * e;
    }
    return acc.real();
}

void apply_pauli_sum(const PauliSum& h, const std::vector<cxd>& v, std::vector<cxd>& out) {
    const std::size_t d = v.size();
    for (const auto& term : h.terms) {
        const CompiledTerm t = compile_term(term, h.n_qubits);
        for (std::size_t x = 0; x < d; ++x)
            out[x ^ t.flip_mask] += t.coeff * term_phase(t, x) * v[x];
    }
}

double op_norm_bound(const PauliSum& h) {
    double b = 0.0;
    for (const auto& t : h.terms) b += std::abs(t.coefficient);
    return b;
}

}  // namespace aheft
