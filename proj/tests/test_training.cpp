#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "aheft/training.hpp"

using namespace aheft;

TEST_CASE("schedule constants") {
    CHECK(sigma_zero(8, 8, 0.1) == doctest::Approx(0.1 / 64.0).epsilon(1e-15));
    CHECK(sigma_crit(8, 8, 0.5) == doctest::Approx(0.0625).epsilon(1e-15));
    CHECK(sigma_crit(4, 4, 0.5) == doctest::Approx(0.125).epsilon(1e-15));
}

TEST_CASE("sigma schedule: flat, exponential, clamped") {
    const double s0 = sigma_zero(8, 8, 0.1);
    const double sc = sigma_crit(8, 8, 0.5);
    const int ts = 30;
    CHECK(sigma_schedule(10, ts, s0, 0.02, sc) == s0);
    CHECK(sigma_schedule(ts, ts, s0, 0.02, sc) == s0);
    CHECK(sigma_schedule(ts + 5, ts, s0, 0.02, sc) ==
          doctest::Approx(s0 * std::exp(0.1)).epsilon(1e-12));
    // sigma0 e^{lambda k} reaches sigma_crit at k = ln(40)/0.02 ~ 184.4
    CHECK(sigma_schedule(ts + 184, ts, s0, 0.02, sc) < sc);
    CHECK(sigma_schedule(ts + 185, ts, s0, 0.02, sc) == sc);
    CHECK(sigma_schedule(ts + 1000, ts, s0, 0.02, sc) == sc);
}

TEST_CASE("theory constants at N=8, L=8") {
    const double b = 16.0;  // TFIM N=8 norm bound
    const TheoryConstants tc = theory_constants(8, 8, 2.0, 0.5, b);
    CHECK(tc.delta_eff == doctest::Approx(24.0).epsilon(1e-12));
    CHECK(tc.w_max == 24);
    CHECK(tc.kappa_lb == doctest::Approx(77.9531).epsilon(1e-4));  // frozen oracle value
}

TEST_CASE("adam first step moves against the gradient at eta scale") {
    ScheduleConfig cfg;
    TrainState st;
    st.theta = {0.0, 0.0};
    st.adam_m.assign(2, 0.0);
    st.adam_v.assign(2, 0.0);
    adam_step(st, {0.5, -2.0}, cfg);
    // bias-corrected first step is -eta * sign(g) up to eps
    CHECK(st.theta[0] == doctest::Approx(-0.01).epsilon(1e-4));
    CHECK(st.theta[1] == doctest::Approx(0.01).epsilon(1e-4));
    CHECK(st.step == 1);
    CHECK_THROWS_AS(adam_step(st, {std::nan(""), 0.0}, cfg), std::runtime_error);
}

TEST_CASE("config validation") {
    ScheduleConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.total_steps = 0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = ScheduleConfig{};
    cfg.noise_p = 1.5;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
    cfg = ScheduleConfig{};
    cfg.kappa = -1.0;
    CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("trajectories have total_steps + 1 entries") {
    const AnsatzSpec spec{AnsatzKind::HeftSpin, 3, 2};
    const PauliSum h = build_tfim(3);
    ScheduleConfig cfg;
    cfg.total_steps = 40;
    cfg.phase1_cap = 20;
    const TrajectoryRecord tr = run_adaptive(spec, h, cfg, RngStream(2).substream({0}));
    CHECK(tr.size() == 41);
    CHECK(tr.grad_norm2.size() == 41);
    CHECK(tr.sigma.size() == 41);
    CHECK(tr.final_theta.size() == std::size_t(param_count(spec)));
    CHECK_FALSE(tr.failed);
}

TEST_CASE("adaptive switches and energy decreases on an easy instance") {
    const AnsatzSpec spec{AnsatzKind::HeftSpin, 4, 2};
    const PauliSum h = build_tfim(4);
    ScheduleConfig cfg;
    const TrajectoryRecord tr = run_adaptive(spec, h, cfg, RngStream(3).substream({0}));
    CHECK(tr.t_switch.has_value());
    CHECK(tr.energy.back() < tr.energy.front());
    // sigma stays at sigma0 before the switch and is clamped after
    const double s0 = sigma_zero(4, 2, cfg.kappa);
    const double sc = sigma_crit(4, 2, cfg.c2);
    for (std::size_t t = 0; t < tr.sigma.size(); ++t) {
        if (int(t) <= *tr.t_switch) CHECK(tr.sigma[t] == s0);
        CHECK(tr.sigma[t] <= sc + 1e-15);
    }
}

TEST_CASE("lambda = 0 adaptive equals the static baseline") {
    // zero growth keeps every perturbation variance at zero, so both loops
    // perform identical Adam descent
    const AnsatzSpec spec{AnsatzKind::HeftSpin, 3, 2};
    const PauliSum h = build_tfim(3);
    ScheduleConfig cfg;
    cfg.lambda = 0.0;
    cfg.total_steps = 60;
    const TrajectoryRecord a = run_adaptive(spec, h, cfg, RngStream(4).substream({0}));
    const TrajectoryRecord s = run_static(spec, h, cfg, RngStream(4).substream({0}));
    CHECK(a.energy == s.energy);
    CHECK(a.final_theta == s.final_theta);
}

TEST_CASE("forced switch engages at the phase-1 cap") {
    const AnsatzSpec spec{AnsatzKind::HeftSpin, 3, 2};
    const PauliSum h = build_tfim(3);
    ScheduleConfig cfg;
    cfg.delta_switch = 1e-18;  // unreachable: force the cap
    cfg.phase1_cap = 15;
    cfg.total_steps = 30;
    const TrajectoryRecord tr = run_adaptive(spec, h, cfg, RngStream(5).substream({0}));
    CHECK(tr.t_switch == 15);
    CHECK(tr.forced_switch);
}

TEST_CASE("hea baseline runs and records") {
    const AnsatzSpec spec{AnsatzKind::Hea, 3, 2};
    const PauliSum h = build_tfim(3);
    ScheduleConfig cfg;
    cfg.total_steps = 30;
    const TrajectoryRecord tr = run_hea(spec, h, cfg, RngStream(6).substream({0}));
    CHECK(tr.size() == 31);
    CHECK_FALSE(tr.t_switch.has_value());
}

TEST_CASE("same stream, same trajectory; different stream, different one") {
    const AnsatzSpec spec{AnsatzKind::HeftSpin, 3, 2};
    const PauliSum h = build_tfim(3);
    ScheduleConfig cfg;
    cfg.total_steps = 50;
    const TrajectoryRecord a = run_adaptive(spec, h, cfg, RngStream(7).substream({0}));
    const TrajectoryRecord b = run_adaptive(spec, h, cfg, RngStream(7).substream({0}));
    const TrajectoryRecord c = run_adaptive(spec, h, cfg, RngStream(7).substream({1}));
    CHECK(a.energy == b.energy);
    CHECK(a.energy != c.energy);
}
