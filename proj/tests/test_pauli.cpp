#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "aheft/ground.hpp"
#include "aheft/pauli.hpp"
#include "aheft/rng.hpp"

using namespace aheft;

namespace {
PureState random_state(int n, RngStream& rng) {
    PureState s = zero_state(n);
    for (auto& a : s.amplitudes) a = cxd(rng.normal(), rng.normal());
    const double nrm = std::sqrt(norm_sq(s));
    for (auto& a : s.amplitudes) a /= nrm;
    return s;
}
}  // namespace

TEST_CASE("TFIM structure") {
    const PauliSum h = build_tfim(4);
    CHECK(h.terms.size() == 8);  // 4 ZZ bonds + 4 X fields
    for (const auto& t : h.terms) CHECK(t.coefficient == -1.0);
    CHECK(op_norm_bound(h) == doctest::Approx(8.0));
    // N=2 keeps the wrap bond twice
    CHECK(build_tfim(2).terms.size() == 4);
}

TEST_CASE("Heisenberg structure") {
    const PauliSum h = build_xxz(4);
    CHECK(h.terms.size() == 12);  // 3 letters x 4 bonds
    for (const auto& t : h.terms) CHECK(t.coefficient == 1.0);
    CHECK(build_xxz(2).terms.size() == 6);
}

TEST_CASE("expectations on the all-zeros state") {
    // TFIM: each ZZ bond gives -1, X fields vanish
    CHECK(expectation(build_tfim(4), zero_state(4)) == doctest::Approx(-4.0));
    // Heisenberg: each ZZ bond gives +1, XX/YY vanish
    CHECK(expectation(build_xxz(4), zero_state(4)) == doctest::Approx(4.0));
}

TEST_CASE("single-term actions on a 2-qubit basis") {
    // <01| X0 X1 |10> amplitude flow: X flips both bits
    PauliSum xx{2, {{0.5, "XX"}}};
    PureState s = zero_state(2);
    s.amplitudes = {0.0, 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0), 0.0};
    CHECK(expectation(xx, s) == doctest::Approx(0.5));

    PauliSum yy{2, {{1.0, "YY"}}};
    CHECK(expectation(yy, s) == doctest::Approx(1.0));  // (|01>+|10>)/sqrt2 is a YY eigenstate
    CHECK(expectation(yy, zero_state(2)) == doctest::Approx(0.0));

    PauliSum zz{2, {{1.0, "ZZ"}}};
    CHECK(expectation(zz, s) == doctest::Approx(-1.0));
}

TEST_CASE("identity letters contribute their coefficient") {
    PauliSum h{3, {{2.5, "III"}, {-1.0, "ZII"}}};
    CHECK(expectation(h, zero_state(3)) == doctest::Approx(1.5));
}

TEST_CASE("pure and mixed expectations agree") {
    RngStream rng(7);
    for (int trial = 0; trial < 5; ++trial) {
        const PureState s = random_state(3, rng);
        const PauliSum h = trial % 2 ? build_xxz(3) : build_tfim(3);
        CHECK(expectation(h, s) ==
              doctest::Approx(expectation(h, mixed_from_pure(s))).epsilon(1e-12));
    }
}

TEST_CASE("apply_pauli_sum is consistent with expectation") {
    RngStream rng(11);
    const PureState s = random_state(4, rng);
    const PauliSum h = build_tfim(4);
    std::vector<cxd> hv(s.dim(), cxd(0.0, 0.0));
    apply_pauli_sum(h, s.amplitudes, hv);
    cxd dot(0.0, 0.0);
    for (std::size_t x = 0; x < s.dim(); ++x) dot += std::conj(s.amplitudes[x]) * hv[x];
    CHECK(dot.real() == doctest::Approx(expectation(h, s)).epsilon(1e-12));
    CHECK(std::abs(dot.imag()) < 1e-12);
}

TEST_CASE("ground energies match the frozen diagonalization oracle") {
    // reference eigensolver values, fixed before this implementation existed
    CHECK(ground_state(build_tfim(2)).energy == doctest::Approx(-2.828427125).epsilon(1e-8));
    CHECK(ground_state(build_tfim(4)).energy == doctest::Approx(-5.226251860).epsilon(1e-8));
    CHECK(ground_state(build_tfim(6)).energy == doctest::Approx(-7.727406610).epsilon(1e-8));
    CHECK(ground_state(build_tfim(8)).energy == doctest::Approx(-10.251661791).epsilon(1e-8));
    CHECK(ground_state(build_xxz(2)).energy == doctest::Approx(-6.0).epsilon(1e-9));
    CHECK(ground_state(build_xxz(4)).energy == doctest::Approx(-8.0).epsilon(1e-9));
    CHECK(ground_state(build_xxz(6)).energy == doctest::Approx(-11.211102551).epsilon(1e-8));
    CHECK(ground_state(build_xxz(8)).energy == doctest::Approx(-14.604373636).epsilon(1e-8));
}

TEST_CASE("reference gaps match the frozen oracle") {
    CHECK(reference_gap(build_tfim(2)) == doctest::Approx(0.573223).epsilon(1e-5));
    CHECK(reference_gap(build_tfim(4)) == doctest::Approx(0.667485).epsilon(1e-5));
    CHECK(reference_gap(build_tfim(6)) == doctest::Approx(0.735959).epsilon(1e-5));
    CHECK(reference_gap(build_tfim(8)) == doctest::Approx(0.789245).epsilon(1e-5));
    for (int n : {2, 4, 6, 8})
        CHECK(reference_gap(build_xxz(n)) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("ground basis states are normalized eigenvectors") {
    const PauliSum h = build_tfim(6);
    const GroundSolution gs = ground_state(h);
    for (const auto& b : gs.basis) {
        CHECK(norm_sq(b) == doctest::Approx(1.0).epsilon(1e-10));
        std::vector<cxd> hv(b.dim(), cxd(0.0, 0.0));
        apply_pauli_sum(h, b.amplitudes, hv);
        double resid = 0.0;
        for (std::size_t x = 0; x < b.dim(); ++x)
            resid += std::norm(hv[x] - gs.energy * b.amplitudes[x]);
        CHECK(std::sqrt(resid) < 1e-8);
    }
}

TEST_CASE("Lanczos path: diagonal Hamiltonian with a known minimum") {
    // n = 11 takes the iterative branch; a Z-field sum has exact ground
    // energy -sum |c_i| regardless of solver
    const int n = 11;
    PauliSum h{n, {}};
    RngStream rng(3);
    double exact = 0.0;
    for (int q = 0; q < n; ++q) {
        std::string letters(std::size_t(n), 'I');
        letters[std::size_t(q)] = 'Z';
        const double c = rng.uniform(0.2, 2.0) * (q % 2 ? 1.0 : -1.0);
        h.terms.push_back({c, letters});
        exact -= std::abs(c);
    }
    const GroundSolution gs = ground_state(h);
    CHECK(gs.energy == doctest::Approx(exact).epsilon(1e-9));
    CHECK(gs.basis.size() == 1);
}

TEST_CASE("Lanczos path resolves a twofold-degenerate ground space") {
    // pure Ising chain (no field): |00...0> and |11...1> both at -N
    const int n = 11;
    PauliSum h{n, {}};
    for (int q = 0; q < n; ++q) {
        std::string letters(std::size_t(n), 'I');
        letters[std::size_t(q)] = 'Z';
        letters[std::size_t((q + 1) % n)] = 'Z';
        h.terms.push_back({-1.0, letters});
    }
    const GroundSolution gs = ground_state(h);
    CHECK(gs.energy == doctest::Approx(-11.0).epsilon(1e-9));
    CHECK(gs.basis.size() == 2);
    double proj = 0.0;  // span check: the all-zeros state lies inside
    const PureState z = zero_state(n);
    for (const auto& b : gs.basis) proj += std::norm(overlap(b, z));
    CHECK(proj == doctest::Approx(1.0).epsilon(1e-8));
}
