#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "aheft/metrics.hpp"

using namespace aheft;

TEST_CASE("gv_report basics") {
    const std::vector<GradientVector> grads = {{1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}};
    const GVReport rep = gv_report(grads);
    CHECK(rep.n_seeds == 3);
    // squared norms 1, 1, 2 -> mean 4/3
    CHECK(rep.mean_sq_norm == doctest::Approx(4.0 / 3.0).epsilon(1e-14));
    // sample variance of (1,1,2) is 1/3 -> stderr sqrt(1/9)
    CHECK(rep.std_err == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(rep.per_param_variance[0] == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK_THROWS_AS(gv_report({{1.0}}), std::domain_error);
    CHECK_THROWS_AS(gv_report({{1.0}, {1.0, 2.0}}), std::length_error);
}

TEST_CASE("effective dimension counts amplitudes above threshold") {
    PureState s = zero_state(3);
    s.amplitudes = {0.9, 0.1, 1e-7, 0.0, 1e-5, 0.0, 0.0, 0.43};
    CHECK(effective_dimension(s) == 4);
    CHECK(effective_dimension(s, 0.2) == 2);
    CHECK_THROWS_AS(effective_dimension(s, 0.0), std::domain_error);
}

TEST_CASE("fidelity against the ground space") {
    const PauliSum h = build_tfim(4);
    const GroundSolution gs = ground_state(h);
    CHECK(fidelity_to_ground(gs.basis.front(), gs) == doctest::Approx(1.0).epsilon(1e-10));
    const double f0 = fidelity_to_ground(zero_state(4), gs);
    CHECK(f0 == doctest::Approx(1.0 - reference_gap(h)).epsilon(1e-10));
}

TEST_CASE("expressibility purity at K=2 is the pair overlap") {
    const AnsatzSpec spec{AnsatzKind::HeftSpin, 3, 2};
    RngStream rng(3);
    const double p = expressibility_purity(spec, ParamSampler::gaussian(0.4), 2, rng);
    RngStream r0 = rng.substream({0}), r1 = rng.substream({1});
    const PureState a = run_circuit(spec, init_params(spec, 0.4, r0));
    const PureState b = run_circuit(spec, init_params(spec, 0.4, r1));
    CHECK(p == doctest::Approx(std::norm(overlap(a, b))).epsilon(1e-14));
}

TEST_CASE("expressibility ordering: narrow Gaussian above uniform") {
    const AnsatzSpec spec{AnsatzKind::HeftSpin, 4, 3};
    RngStream r1(5), r2(5);
    const double concentrated =
        expressibility_purity(spec, ParamSampler::gaussian(0.01), 40, r1);
    const double spread = expressibility_purity(spec, ParamSampler::haar_uniform(), 40, r2);
    CHECK(concentrated > 0.95);  // nearly identical states
    CHECK(spread < concentrated);
    CHECK(spread >= 0.0);
    CHECK(concentrated <= 1.0 + 1e-12);
}

TEST_CASE("amplitude bound report") {
    PureState s = zero_state(2);
    s.amplitudes = {std::sqrt(0.97), 0.1, 0.1, 0.1};
    const AmplitudeBoundReport rep = amplitude_bound_report(s, 6, 0.1);
    // bounds: w=1 -> 0.6, w=2 -> 0.18
    CHECK(rep.per_weight_bound[1] == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(rep.per_weight_bound[2] == doctest::Approx(0.18).epsilon(1e-12));
    CHECK(rep.per_weight_max_amp[0] == doctest::Approx(std::sqrt(0.97)));
    CHECK(rep.per_weight_max_amp[1] == doctest::Approx(0.1));
    CHECK(rep.max_ratio == doctest::Approx(0.1 / 0.18).epsilon(1e-12));
    CHECK_FALSE(rep.violating_weight.has_value());

    s.amplitudes = {0.0, 0.0, 0.0, 1.0};  // weight-2 amplitude above its bound
    const AmplitudeBoundReport hot = amplitude_bound_report(s, 6, 0.1);
    CHECK(hot.violating_weight == 2);
    CHECK(hot.max_ratio > 1.0);
}
