#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "aheft/ansatz.hpp"

using namespace aheft;

TEST_CASE("parameter counts") {
    CHECK(param_count({AnsatzKind::HeftSpin, 8, 8}) == 8 * 15);
    CHECK(param_count({AnsatzKind::HeftSpin, 4, 1}) == 7);
    CHECK(param_count({AnsatzKind::Hea, 8, 8}) == 64);
    CHECK_THROWS_AS(validate_spec({AnsatzKind::HeftSpin, 1, 1}), std::length_error);
    CHECK_THROWS_AS(validate_spec({AnsatzKind::HeftSpin, 15, 1}), std::length_error);
    CHECK_THROWS_AS(validate_spec({AnsatzKind::HeftSpin, 4, 0}), std::length_error);
}

TEST_CASE("layer structure") {
    const auto spin = build_circuit({AnsatzKind::HeftSpin, 4, 2});
    // per layer: 4 RY + 3 entanglers
    CHECK(spin.size() == 2 * 7);
    int rys = 0, ents = 0;
    for (const auto& op : spin) {
        if (op.kind == CircuitOp::Kind::Ry) ++rys;
        if (op.kind == CircuitOp::Kind::ZzEntangler) ++ents;
    }
    CHECK(rys == 8);
    CHECK(ents == 6);

    const auto hea = build_circuit({AnsatzKind::Hea, 4, 2});
    CHECK(hea.size() == 2 * 7);  // 4 RY + 3 CNOTs per layer
    int cnots = 0;
    for (const auto& op : hea)
        if (op.kind == CircuitOp::Kind::Cnot) {
            ++cnots;
            CHECK(op.param_index == -1);
        }
    CHECK(cnots == 6);
}

TEST_CASE("every parameter slot is used exactly once") {
    const AnsatzSpec spec{AnsatzKind::HeftSpin, 5, 3};
    std::vector<int> seen(std::size_t(param_count(spec)), 0);
    for (const auto& op : build_circuit(spec))
        if (op.param_index >= 0) ++seen[std::size_t(op.param_index)];
    for (int c : seen) CHECK(c == 1);
}

TEST_CASE("zero angles leave the reference state fixed") {
    const AnsatzSpec spec{AnsatzKind::HeftSpin, 4, 3};
    const ParamVector theta(std::size_t(param_count(spec)), 0.0);
    const PureState s = run_circuit(spec, theta);
    CHECK(std::norm(s.amplitudes[0]) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("primitive expansion matches the direct entangler path") {
    const AnsatzSpec spec{AnsatzKind::HeftSpin, 3, 2};
    RngStream rng(9);
    ParamVector theta(std::size_t(param_count(spec)));
    for (auto& t : theta) t = rng.uniform(-2, 2);
    const PureState direct = run_circuit(spec, theta);
    PureState expanded = zero_state(3);
    for (const auto& g : primitive_gates(spec, theta)) apply_gate(expanded, g);
    CHECK(std::norm(overlap(direct, expanded)) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("noisy path at p=0 equals the pure path") {
    const AnsatzSpec spec{AnsatzKind::HeftSpin, 3, 2};
    RngStream rng(13);
    ParamVector theta(std::size_t(param_count(spec)));
    for (auto& t : theta) t = rng.uniform(-2, 2);
    const MixedState rho = run_circuit_noisy(spec, theta, 0.0);
    const MixedState ref = mixed_from_pure(run_circuit(spec, theta));
    double max_diff = 0.0;
    for (std::size_t k = 0; k < rho.matrix.size(); ++k)
        max_diff = std::max(max_diff, std::abs(rho.matrix[k] - ref.matrix[k]));
    CHECK(max_diff < 1e-12);
}

TEST_CASE("noisy path respects the qubit cap") {
    const AnsatzSpec spec{AnsatzKind::HeftSpin, 11, 1};
    const ParamVector theta(std::size_t(param_count(spec)), 0.0);
    CHECK_THROWS_AS(run_circuit_noisy(spec, theta, 0.01), std::length_error);
}

TEST_CASE("initialization samplers") {
    const AnsatzSpec spin{AnsatzKind::HeftSpin, 6, 4};
    RngStream rng(21);

    // sigma = 0 collapses to the identity circuit without consuming draws
    RngStream a = rng.substream({1});
    const ParamVector zeros = init_params(spin, 0.0, a);
    for (double t : zeros) CHECK(t == 0.0);

    RngStream b = rng.substream({2});
    const ParamVector gauss = init_params(spin, 0.05, b);
    double mean = 0.0, var = 0.0;
    for (double t : gauss) mean += t;
    mean /= double(gauss.size());
    for (double t : gauss) var += (t - mean) * (t - mean);
    var /= double(gauss.size() - 1);
    CHECK(std::abs(mean) < 0.05);          // loose: 264 draws at sigma=0.05
    CHECK(var == doctest::Approx(0.0025).epsilon(0.5));

    const AnsatzSpec hea{AnsatzKind::Hea, 6, 4};
    RngStream c = rng.substream({3});
    for (double t : init_params(hea, 0.0, c)) {
        CHECK(t >= 0.0);
        CHECK(t < 2.0 * M_PI);
    }

    RngStream d = rng.substream({4});
    CHECK_THROWS_AS(init_params(spin, -0.1, d), std::domain_error);
}

TEST_CASE("identical substreams give identical draws") {
    const AnsatzSpec spec{AnsatzKind::HeftSpin, 5, 2};
    RngStream root(99);
    RngStream r1 = root.substream({4, 2});
    RngStream r2 = root.substream({4, 2});
    CHECK(init_params(spec, 0.3, r1) == init_params(spec, 0.3, r2));
    RngStream r3 = root.substream({4, 3});
    CHECK(init_params(spec, 0.3, r1) != init_params(spec, 0.3, r3));
}
