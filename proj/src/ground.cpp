#include "aheft/ground.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "aheft/rng.hpp"

namespace aheft {

namespace {

constexpr int kDenseMaxQubits = 10;

Eigen::MatrixXcd dense_matrix(const PauliSum& h) {
    const std::size_t d = std::size_t(1) << h.n_qubits;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(Eigen::Index(d), Eigen::Index(d));
    std::vector<cxd> unit(d), col(d);
    for (std::size_t x = 0; x < d; ++x) {
        std::fill(unit.begin(), unit.end(), cxd(0.0));
        std::fill(col.begin(), col.end(), cxd(0.0));
        unit[x] = 1.0;
        apply_pauli_sum(h, unit, col);
        for (std::size_t r = 0; r < d; ++r) m(Eigen::Index(r), Eigen::Index(x)) = col[r];
    }
    return m;
}

PureState vec_to_state(int n_qubits, const Eigen::VectorXcd& v) {
    PureState s;
    s.n_qubits = n_qubits;
    s.amplitudes.assign(v.data(), v.data() + v.size());
    return s;
}

struct LanczosResult {
    double eigenvalue;
    Eigen::VectorXcd vector;
    double residual;
    int iterations;
};

// Lowest eigenpair of H restricted to the orthogonal complement of
// `deflate`, via Lanczos with full reorthogonalization.
LanczosResult lanczos_lowest(const PauliSum& h, const std::vector<Eigen::VectorXcd>& deflate,
                             std::uint64_t seed) {
    const std::size_t d = std::size_t(1) << h.n_qubits;
    const int max_iter = int(std::min<std::size_t>(d, 400));

    auto project_out = [&](Eigen::VectorXcd& v) {
        for (const auto& w : deflate) v -= w.dot(v) * w;
    };

    RngStream rng(seed);
    Eigen::VectorXcd q = Eigen::VectorXcd::Zero(Eigen::Index(d));
    for (Eigen::Index i = 0; i < q.size(); ++i) q[i] = cxd(rng.normal(), rng.normal());
    project_out(q);
    q.normalize();

    std::vector<Eigen::VectorXcd> basis;
    std::vector<double> alpha, beta;
    std::vector<cxd> vin(d), vout(d);

    Eigen::VectorXcd w = Eigen::VectorXcd::Zero(Eigen::Index(d));
    for (int it = 0; it < max_iter; ++it) {
        basis.push_back(q);
        std::copy(q.data(), q.data() + d, vin.begin());
        std::fill(vout.begin(), vout.end(), cxd(0.0));
        apply_pauli_sum(h, vin, vout);
        for (std::size_t i = 0; i < d; ++i) w[Eigen::Index(i)] = vout[i];
        project_out(w);
        alpha.push_back(q.dot(w).real());
        // full reorthogonalization against all previous Lanczos vectors
        for (const auto& b : basis) w -= b.dot(w) * b;
        for (const auto& b : basis) w -= b.dot(w) * b;
        const double bnorm = w.norm();
        if (bnorm < 1e-13) break;  // invariant subspace exhausted
        beta.push_back(bnorm);
        q = w / bnorm;
    }

    const int m = int(alpha.size());
    Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
        tri(i, i) = alpha[std::size_t(i)];
        if (i + 1 < m) tri(i, i + 1) = tri(i + 1, i) = beta[std::size_t(i)];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tri);
    const Eigen::VectorXd& ritz = es.eigenvectors().col(0);

    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(Eigen::Index(d));
    for (int i = 0; i < m; ++i) v += ritz[i] * basis[std::size_t(i)];
    project_out(v);
    v.normalize();

    std::copy(v.data(), v.data() + d, vin.begin());
    std::fill(vout.begin(), vout.end(), cxd(0.0));
    apply_pauli_sum(h, vin, vout);
    Eigen::Map<Eigen::VectorXcd> hv(vout.data(), Eigen::Index(d));
    const double ev = v.dot(hv).real();
    const double res = (hv - ev * v).norm();
    return {ev, v, res, m};
}

}  // namespace

GroundSolution ground_state(const PauliSum& h, double degeneracy_tol) {
    if (h.n_qubits > kMaxQubits) throw std::length_error("ground_state capped at 14 qubits");
    GroundSolution sol;
    sol.degeneracy_tol = degeneracy_tol;

    if (h.n_qubits <= kDenseMaxQubits) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense_matrix(h));
        const auto& vals = es.eigenvalues();
        const double range = std::max(1.0, vals[vals.size() - 1] - vals[0]);
        sol.energy = vals[0];
        for (Eigen::Index i = 0; i < vals.size() && vals[i] <= vals[0] + degeneracy_tol * range; ++i)
            sol.basis.push_back(vec_to_state(h.n_qubits, es.eigenvectors().col(i)));
        return sol;
    }

    const double scale = std::max(1.0, op_norm_bound(h));
    std::vector<Eigen::VectorXcd> found;
    constexpr int kMaxDegeneracy = 8;
    for (int k = 0; k < kMaxDegeneracy; ++k) {
        LanczosResult r = lanczos_lowest(h, found, 0x5eedULL + std::uint64_t(k));
        if (r.residual > 1e-7 * scale)
            throw std::runtime_error("Lanczos did not converge: residual " + std::to_string(r.residual) +
                                     " after " + std::to_string(r.iterations) + " iterations");
        if (k == 0) {
            sol.energy = r.eigenvalue;
        } else if (r.eigenvalue > sol.energy + degeneracy_tol * 2.0 * scale) {
            break;  // next eigenvalue is outside the ground space
        }
        found.push_back(r.vector);
    }
    for (const auto& v : found) sol.basis.push_back(vec_to_state(h.n_qubits, v));
    return sol;
}

double reference_gap(const PauliSum& h) {
    const GroundSolution sol = ground_state(h);
    double proj = 0.0;
    for (const auto& b : sol.basis) proj += std::norm(b.amplitudes[0]);
    return std::clamp(1.0 - proj, 0.0, 1.0);
}

}  // namespace aheft
