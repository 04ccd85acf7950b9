#include "aheft/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <functional>
#include <stdexcept>
#include <thread>

#include "aheft/metrics.hpp"
#include "aheft/stats.hpp"

namespace aheft {

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr int kSchemaVersion = 1;

struct MeanErr {
    double mean = 0.0;
    double stderr_ = 0.0;
    double sd = 0.0;
};

MeanErr mean_err(const std::vector<double>& xs) {
    MeanErr m;
    const double n = double(xs.size());
    if (xs.empty()) return m;
    for (double x : xs) m.mean += x;
    m.mean /= n;
    if (xs.size() > 1) {
        double var = 0.0;
        for (double x : xs) var += (x - m.mean) * (x - m.mean);
        var /= (n - 1.0);
        m.sd = std::sqrt(var);
        m.stderr_ = m.sd / std::sqrt(n);
    }
    return m;
}

void parallel_for(int total, int workers, const std::function<void(int)>& fn) {
    workers = std::max(1, std::min(workers, total));
    if (workers == 1) {
        for (int i = 0; i < total; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (int i = w; i < total; i += workers) fn(i);
            } catch (...) {
                errors[std::size_t(w)] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

std::string ham_name(HamiltonianKind k) { return k == HamiltonianKind::Tfim ? "tfim" : "xxz"; }
std::string scale_name(RunScale s) { return s == RunScale::Desk ? "desk" : "paper"; }

json config_json(const ExperimentConfig& c) {
    json j;
    j["experiment_id"] = c.experiment_id;
    j["hamiltonian"] = ham_name(c.hamiltonian);
    j["n_list"] = c.n_list;
    j["l_list"] = c.l_list;
    j["n_seeds"] = c.n_seeds;
    j["master_seed"] = c.master_seed;
    j["scale"] = scale_name(c.scale);
    j["schedule"] = {{"kappa", c.schedule.kappa},
                     {"lambda", c.schedule.lambda},
                     {"c1", c.schedule.c1},
                     {"c2", c.schedule.c2},
                     {"delta_switch", c.schedule.delta_switch},
                     {"burn_in", c.schedule.burn_in},
                     {"total_steps", c.schedule.total_steps},
                     {"phase1_cap", c.schedule.phase1_cap},
                     {"eta", c.schedule.eta},
                     {"noise_p", c.schedule.noise_p}};
    if (!c.sigma_values.empty()) j["sweep"]["sigma"] = c.sigma_values;
    if (!c.delta_switch_values.empty()) j["sweep"]["delta_switch"] = c.delta_switch_values;
    if (!c.lambda_values.empty()) j["sweep"]["lambda"] = c.lambda_values;
    if (!c.noise_values.empty()) j["sweep"]["noise_p"] = c.noise_values;
    if (!c.shot_values.empty()) j["sweep"]["shots"] = c.shot_values;
    return j;
}

json theory_block(const ExperimentConfig& c) {
    json arr = json::array();
    for (int n : c.n_list)
        for (int l : c.l_list) {
            const PauliSum h = build_hamiltonian(c.hamiltonian, n);
            const double b = op_norm_bound(h);
            const TheoryConstants tc = theory_constants(n, l, c.schedule.c1, c.schedule.c2, b);
            arr.push_back({{"n", n},
                           {"l", l},
                           {"b", b},
                           {"sigma0", sigma_zero(n, l, c.schedule.kappa)},
                           {"sigma_crit", sigma_crit(n, l, c.schedule.c2)},
                           {"delta_eff", tc.delta_eff},
                           {"w_max", tc.w_max},
                           {"kappa_lb", tc.kappa_lb}});
        }
    return arr;
}

json series_entry(const std::string& name, const std::vector<double>& x,
                  const std::vector<double>& y, const std::vector<double>& yerr = {}) {
    json s = {{"name", name}, {"x", x}, {"y", y}};
    if (!yerr.empty()) s["yerr"] = yerr;
    return s;
}

json traj_json(const TrajectoryRecord& t, bool include_theta = false) {
    json j;
    j["energy"] = t.energy;
    j["grad_norm2"] = t.grad_norm2;
    j["sigma"] = t.sigma;
    if (!t.deff.empty()) {
        j["deff_step"] = t.deff_step;
        j["deff"] = t.deff;
    }
    if (t.t_switch) j["t_switch"] = *t.t_switch;
    j["forced_switch"] = t.forced_switch;
    j["failed"] = t.failed;
    if (include_theta) j["final_theta"] = t.final_theta;
    return j;
}

enum class Method { Adaptive, Static, Hea };

const char* method_name(Method m) {
    switch (m) {
        case Method::Adaptive: return "adaptive";
        case Method::Static: return "static";
        default: return "hea";
    }
}

AnsatzSpec spec_for(Method m, int n, int l) {
    return {m == Method::Hea ? AnsatzKind::Hea : AnsatzKind::HeftSpin, n, l};
}

TrajectoryRecord run_method(Method m, const AnsatzSpec& spec, const PauliSum& h,
                            const ScheduleConfig& cfg, const RngStream& rng) {
    switch (m) {
        case Method::Adaptive: return run_adaptive(spec, h, cfg, rng);
        case Method::Static: return run_static(spec, h, cfg, rng);
        default: return run_hea(spec, h, cfg, rng);
    }
}

struct Context {
    const ExperimentConfig& cfg;
    RngStream root;
    json per_seed = json::array();
    json aggregates = json::object();
    json series = json::array();
};

// ---- individual experiments ------------------------------------------------

// Gradient-variance statistics for fresh samples at a given sigma.
GVReport gv_fresh(const ExperimentConfig& cfg, const RngStream& root, int n, int l,
                  double sigma, std::uint64_t sweep_key) {
    const AnsatzSpec spec{AnsatzKind::HeftSpin, n, l};
    const PauliSum h = build_hamiltonian(cfg.hamiltonian, n);
    std::vector<GradientVector> grads(std::size_t(cfg.n_seeds));
    parallel_for(cfg.n_seeds, cfg.workers, [&](int s) {
        RngStream rng = root.substream({sweep_key, std::uint64_t(s)});
        const ParamVector theta = init_params(spec, sigma, rng);
        grads[std::size_t(s)] = gradient_exact(spec, theta, h);
    });
    return gv_report(grads);
}

void run_at1(Context& ctx) {
    const auto& cfg = ctx.cfg;
    std::uint64_t key = 0;
    for (int phase = 0; phase < 2; ++phase) {
        for (int l : cfg.l_list) {
            std::vector<double> xs, ys, es;
            for (int n : cfg.n_list) {
                const double sigma = phase == 0 ? sigma_zero(n, l, cfg.schedule.kappa)
                                                : sigma_crit(n, l, cfg.schedule.c2);
                const GVReport rep = gv_fresh(cfg, ctx.root, n, l, sigma, key++);
                xs.push_back(n);
                ys.push_back(rep.mean_sq_norm);
                es.push_back(rep.std_err);
                ctx.per_seed.push_back({{"n", n},
                                        {"l", l},
                                        {"phase", phase + 1},
                                        {"finals", {{"mean_sq_norm", rep.mean_sq_norm},
                                                    {"std_err", rep.std_err}}}});
            }
            ctx.series.push_back(series_entry(
                std::string("gv_phase") + (phase == 0 ? "1" : "2") + "_L" + std::to_string(l),
                xs, ys, es));
        }
    }
}

void run_at2(Context& ctx) {
    const auto& cfg = ctx.cfg;
    const int n = cfg.n_list.front(), l = cfg.l_list.front();
    std::vector<double> xs, ys, es;
    for (std::size_t si = 0; si < cfg.sigma_values.size(); ++si) {
        const double sigma = cfg.sigma_values[si];
        const GVReport rep = gv_fresh(cfg, ctx.root, n, l, sigma, si);
        xs.push_back(sigma);
        ys.push_back(rep.mean_sq_norm);
        es.push_back(rep.std_err);
        ctx.per_seed.push_back({{"sigma", sigma},
                                {"finals", {{"mean_sq_norm", rep.mean_sq_norm},
                                            {"std_err", rep.std_err}}}});
    }
    ctx.aggregates["sigma"] = xs;
    ctx.aggregates["mean_sq_norm"] = ys;
    ctx.series.push_back(series_entry("gv_vs_sigma", xs, ys, es));
}

// Shared runner for experiments built on full training trajectories.
std::vector<TrajectoryRecord> run_seeds(const ExperimentConfig& cfg, const RngStream& root,
                                        Method m, int n, int l, const ScheduleConfig& sched,
                                        std::uint64_t sweep_key) {
    const AnsatzSpec spec = spec_for(m, n, l);
    const PauliSum h = build_hamiltonian(cfg.hamiltonian, n);
    std::vector<TrajectoryRecord> out(std::size_t(cfg.n_seeds));
    parallel_for(cfg.n_seeds, cfg.workers, [&](int s) {
        out[std::size_t(s)] =
            run_method(m, spec, h, sched, root.substream({sweep_key, std::uint64_t(s)}));
    });
    return out;
}

void run_at3(Context& ctx) {
    const auto& cfg = ctx.cfg;
    const int n = cfg.n_list.front(), l = cfg.l_list.front();
    const auto trajs = run_seeds(cfg, ctx.root, Method::Adaptive, n, l, cfg.schedule, 0);
    const std::size_t steps = trajs.front().size();
    std::vector<double> xs(steps), ys(steps), sds(steps);
    for (std::size_t t = 0; t < steps; ++t) {
        std::vector<double> vals;
        for (const auto& tr : trajs) vals.push_back(tr.grad_norm2[t]);
        const MeanErr m = mean_err(vals);
        xs[t] = double(t);
        ys[t] = m.mean;
        sds[t] = m.sd;
    }
    for (int s = 0; s < cfg.n_seeds; ++s)
        ctx.per_seed.push_back({{"seed", s},
                                {"trajectory", traj_json(trajs[std::size_t(s)])},
                                {"finals", {{"energy", trajs[std::size_t(s)].energy.back()}}}});
    ctx.series.push_back(series_entry("grad_norm_timeline", xs, ys, sds));
}

void run_at4(Context& ctx) {
    const auto& cfg = ctx.cfg;
    for (int n : cfg.n_list)
        for (int l : cfg.l_list)
            for (Method m : {Method::Adaptive, Method::Static, Method::Hea}) {
                const std::uint64_t key =
                    std::uint64_t(n) * 1000 + std::uint64_t(l) * 10 + std::uint64_t(m);
                const auto trajs = run_seeds(cfg, ctx.root, m, n, l, cfg.schedule, key);
                const auto& tr = trajs.front();
                std::vector<double> xs(tr.size());
                for (std::size_t t = 0; t < tr.size(); ++t) xs[t] = double(t);
                ctx.series.push_back(series_entry("energy_" + std::string(method_name(m)) + "_N" +
                                                      std::to_string(n) + "_L" + std::to_string(l),
                                                  xs, tr.energy));
                ctx.per_seed.push_back({{"n", n},
                                        {"l", l},
                                        {"method", method_name(m)},
                                        {"seed", 0},
                                        {"finals", {{"energy", tr.energy.back()}}}});
            }
}

void run_at5(Context& ctx) {
    const auto& cfg = ctx.cfg;
    const int l = cfg.l_list.front();
    for (Method m : {Method::Adaptive, Method::Static, Method::Hea}) {
        std::vector<double> xs, ys;
        for (int n : cfg.n_list) {
            const std::uint64_t key = std::uint64_t(n) * 10 + std::uint64_t(m);
            const auto trajs = run_seeds(cfg, ctx.root, m, n, l, cfg.schedule, key);
            xs.push_back(n);
            ys.push_back(trajs.front().energy.back());
            ctx.per_seed.push_back({{"n", n},
                                    {"method", method_name(m)},
                                    {"seed", 0},
                                    {"finals", {{"energy", trajs.front().energy.back()}}}});
        }
        ctx.series.push_back(series_entry("final_energy_" + std::string(method_name(m)), xs, ys));
    }
}

void run_at6(Context& ctx) {
    const auto& cfg = ctx.cfg;
    const int n = cfg.n_list.front();
    const PauliSum h = build_hamiltonian(cfg.hamiltonian, n);
    const GroundSolution gs = ground_state(h);
    for (Method m : {Method::Adaptive, Method::Static, Method::Hea}) {
        std::vector<double> xs, ys, sds;
        for (int l : cfg.l_list) {
            const std::uint64_t key = std::uint64_t(l) * 10 + std::uint64_t(m);
            const auto trajs = run_seeds(cfg, ctx.root, m, n, l, cfg.schedule, key);
            std::vector<double> fids;
            for (int s = 0; s < cfg.n_seeds; ++s) {
                const AnsatzSpec spec = spec_for(m, n, l);
                const double f = fidelity_to_ground(
                    run_circuit(spec, trajs[std::size_t(s)].final_theta), gs);
                fids.push_back(f);
                ctx.per_seed.push_back({{"l", l},
                                        {"method", method_name(m)},
                                        {"seed", s},
                                        {"finals",
                                         {{"fidelity", f},
                                          {"energy", trajs[std::size_t(s)].energy.back()}}}});
            }
            const MeanErr me = mean_err(fids);
            xs.push_back(l);
            ys.push_back(me.mean);
            sds.push_back(me.sd);
        }
        ctx.series.push_back(series_entry("fidelity_" + std::string(method_name(m)), xs, ys, sds));
    }
    ctx.aggregates["reference_gap"] = reference_gap(h);
}

void run_at7(Context& ctx) {
    const auto& cfg = ctx.cfg;
    for (HamiltonianKind kind : {HamiltonianKind::Tfim, HamiltonianKind::Xxz}) {
        std::vector<double> xs, ys;
        for (int n : cfg.n_list) {
            const double gap = reference_gap(build_hamiltonian(kind, n));
            xs.push_back(n);
            ys.push_back(gap);
            ctx.per_seed.push_back(
                {{"hamiltonian", ham_name(kind)}, {"n", n}, {"finals", {{"reference_gap", gap}}}});
        }
        ctx.series.push_back(series_entry("reference_gap_" + ham_name(kind), xs, ys));
        ctx.aggregates["reference_gap_" + ham_name(kind)] = ys;
    }
}

void run_at8(Context& ctx) {
    const auto& cfg = ctx.cfg;
    const int n = cfg.n_list.front(), l = cfg.l_list.front();
    ScheduleConfig sched = cfg.schedule;
    sched.log_deff_every = 5;
    const auto trajs = run_seeds(cfg, ctx.root, Method::Adaptive, n, l, sched, 0);
    for (int s = 0; s < cfg.n_seeds; ++s) {
        const auto& tr = trajs[std::size_t(s)];
        ctx.per_seed.push_back({{"seed", s},
                                {"trajectory", traj_json(tr)},
                                {"finals", {{"energy", tr.energy.back()},
                                            {"deff_final", tr.deff.back()}}}});
    }
    const auto& tr = trajs.front();
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < tr.deff.size(); ++i) {
        xs.push_back(tr.deff_step[i]);
        ys.push_back(tr.deff[i]);
    }
    ctx.series.push_back(series_entry("deff_timeline", xs, ys));
}

void run_at9(Context& ctx) {
    const auto& cfg = ctx.cfg;
    const int n = cfg.n_list.front();
    std::vector<int> half_cut;
    for (int q = 0; q < n / 2; ++q) half_cut.push_back(q);  // conventional half-chain cut
    struct Arm { const char* name; bool uniform; bool crit; };
    const Arm arms[] = {{"adaptive_phase2", false, true},
                        {"static", false, false},
                        {"hea", true, false}};
    std::uint64_t key = 0;
    for (const Arm& arm : arms) {
        std::vector<double> xs, ys, sds;
        for (int l : cfg.l_list) {
            AnsatzSpec spec{arm.uniform ? AnsatzKind::Hea : AnsatzKind::HeftSpin, n, l};
            const double sigma = arm.crit ? sigma_crit(n, l, cfg.schedule.c2)
                                          : sigma_zero(n, l, cfg.schedule.kappa);
            std::vector<double> entropies(std::size_t(cfg.n_seeds));
            parallel_for(cfg.n_seeds, cfg.workers, [&](int s) {
                RngStream rng = ctx.root.substream({key, std::uint64_t(s)});
                const ParamVector theta = init_params(spec, sigma, rng);
                entropies[std::size_t(s)] =
                    vn_entropy(reduced_density(run_circuit(spec, theta), half_cut));
            });
            ++key;
            for (int s = 0; s < cfg.n_seeds; ++s)
                ctx.per_seed.push_back({{"arm", arm.name},
                                        {"l", l},
                                        {"seed", s},
                                        {"finals", {{"entropy", entropies[std::size_t(s)]}}}});
            const MeanErr me = mean_err(entropies);
            xs.push_back(l);
            ys.push_back(me.mean);
            sds.push_back(me.sd);
        }
        ctx.series.push_back(series_entry(std::string("entropy_") + arm.name, xs, ys, sds));
    }
    ctx.aggregates["entropy_log_base"] = 2;
}

void run_at10(Context& ctx) {
    const auto& cfg = ctx.cfg;
    const int n = cfg.n_list.front();
    const int samples = cfg.n_seeds;  // 500 samples per the figure protocol
    struct Arm { const char* name; bool uniform; bool crit; };
    const Arm arms[] = {{"adaptive_phase2", false, true},
                        {"static", false, false},
                        {"hea", true, false}};
    std::uint64_t key = 0;
    for (const Arm& arm : arms) {
        std::vector<double> xs, ys;
        for (int l : cfg.l_list) {
            AnsatzSpec spec{arm.uniform ? AnsatzKind::Hea : AnsatzKind::HeftSpin, n, l};
            const ParamSampler sampler =
                arm.uniform ? ParamSampler::haar_uniform()
                            : ParamSampler::gaussian(arm.crit ? sigma_crit(n, l, cfg.schedule.c2)
                                                              : sigma_zero(n, l, cfg.schedule.kappa));
            RngStream rng = ctx.root.substream({key++});
            const double p = expressibility_purity(spec, sampler, samples, rng);
            xs.push_back(l);
            ys.push_back(p);
            ctx.per_seed.push_back(
                {{"arm", arm.name}, {"l", l}, {"finals", {{"purity", p}}}});
        }
        ctx.series.push_back(series_entry(std::string("purity_") + arm.name, xs, ys));
    }
    // quoted Haar reference, recorded but not asserted
    ctx.aggregates["haar_purity_reference"] = 2.0 / (std::pow(2.0, n) + 1.0);
}

void run_at11(Context& ctx) {
    const auto& cfg = ctx.cfg;
    const int n = cfg.n_list.front(), l = cfg.l_list.front();
    std::vector<double> xs, ys;
    for (std::size_t pi = 0; pi < cfg.noise_values.size(); ++pi) {
        const double p = cfg.noise_values[pi];
        ScheduleConfig sched = cfg.schedule;
        sched.noise_p = p;
        const auto trajs = run_seeds(cfg, ctx.root, Method::Adaptive, n, l, sched, pi);
        std::vector<double> finals;
        for (int s = 0; s < cfg.n_seeds; ++s) {
            finals.push_back(trajs[std::size_t(s)].energy.back());
            ctx.per_seed.push_back({{"noise_p", p},
                                    {"seed", s},
                                    {"trajectory", traj_json(trajs[std::size_t(s)])},
                                    {"finals", {{"energy", finals.back()}}}});
        }
        xs.push_back(p);
        ys.push_back(mean_err(finals).mean);
    }
    ctx.aggregates["noise_p"] = xs;
    ctx.aggregates["final_energy"] = ys;
    ctx.series.push_back(series_entry("final_energy_vs_noise", xs, ys));
}

void run_at12(Context& ctx) {
    const auto& cfg = ctx.cfg;
    const int n = cfg.n_list.front(), l = cfg.l_list.front();
    const AnsatzSpec spec{AnsatzKind::HeftSpin, n, l};
    const PauliSum h = build_hamiltonian(cfg.hamiltonian, n);
    std::vector<double> xs, ys;
    for (std::size_t mi = 0; mi < cfg.shot_values.size(); ++mi) {
        const long shots = cfg.shot_values[mi];
        std::vector<double> mses(std::size_t(cfg.n_seeds));
        parallel_for(cfg.n_seeds, cfg.workers, [&](int s) {
            RngStream rng = ctx.root.substream({mi, std::uint64_t(s)});
            RngStream init = rng.substream({0});
            const double sigma = sigma_crit(n, l, cfg.schedule.c2);
            const ParamVector theta = init_params(spec, sigma, init);
            const GradientVector exact = gradient_exact(spec, theta, h);
            RngStream shot_rng = rng.substream({1});
            const GradientVector est = gradient_sampled(spec, theta, h, shots, shot_rng);
            double mse = 0.0;
            for (std::size_t j = 0; j < exact.size(); ++j)
                mse += (est[j] - exact[j]) * (est[j] - exact[j]);
            mses[std::size_t(s)] = mse / double(exact.size());
        });
        double mean_mse = mean_err(mses).mean;
        for (int s = 0; s < cfg.n_seeds; ++s)
            ctx.per_seed.push_back({{"shots", shots},
                                    {"seed", s},
                                    {"finals", {{"mse", mses[std::size_t(s)]}}}});
        xs.push_back(double(shots));
        ys.push_back(mean_mse);
    }
    // log-log slope via least squares
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double k = double(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double lx = std::log10(xs[i]), ly = std::log10(ys[i]);
        sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
    }
    ctx.aggregates["loglog_slope"] = (k * sxy - sx * sy) / (k * sxx - sx * sx);
    ctx.aggregates["shots"] = xs;
    ctx.aggregates["mse"] = ys;
    ctx.series.push_back(series_entry("gradient_mse_vs_shots", xs, ys));
}

void run_sweep(Context& ctx, const std::vector<double>& values, const char* key_name,
               const std::function<void(ScheduleConfig&, double)>& apply) {
    const auto& cfg = ctx.cfg;
    const int n = cfg.n_list.front(), l = cfg.l_list.front();
    std::vector<double> xs, ys, es;
    for (std::size_t vi = 0; vi < values.size(); ++vi) {
        ScheduleConfig sched = cfg.schedule;
        apply(sched, values[vi]);
        const auto trajs = run_seeds(cfg, ctx.root, Method::Adaptive, n, l, sched, vi);
        std::vector<double> finals;
        for (int s = 0; s < cfg.n_seeds; ++s) {
            finals.push_back(trajs[std::size_t(s)].energy.back());
            ctx.per_seed.push_back({{key_name, values[vi]},
                                    {"seed", s},
                                    {"finals", {{"energy", finals.back()}}}});
        }
        const MeanErr me = mean_err(finals);
        xs.push_back(values[vi]);
        ys.push_back(me.mean);
        es.push_back(me.stderr_);
    }
    ctx.aggregates[key_name] = xs;
    ctx.aggregates["mean_final_energy"] = ys;
    ctx.series.push_back(series_entry(std::string("final_energy_vs_") + key_name, xs, ys, es));
}

void run_at15(Context& ctx) {
    const auto& cfg = ctx.cfg;
    const int n = cfg.n_list.front(), l = cfg.l_list.front();
    std::vector<std::vector<double>> finals(3);
    for (Method m : {Method::Adaptive, Method::Static, Method::Hea}) {
        const auto trajs = run_seeds(cfg, ctx.root, m, n, l, cfg.schedule, std::uint64_t(m));
        for (int s = 0; s < cfg.n_seeds; ++s) {
            finals[std::size_t(m)].push_back(trajs[std::size_t(s)].energy.back());
            ctx.per_seed.push_back({{"method", method_name(m)},
                                    {"seed", s},
                                    {"finals", {{"energy", trajs[std::size_t(s)].energy.back()}}}});
        }
        ctx.aggregates[std::string("mean_final_") + method_name(m)] =
            mean_err(finals[std::size_t(m)]).mean;
    }
    auto test_json = [](const StatTestResult& r) {
        return json{{"t_stat", std::isfinite(r.t_stat) ? json(r.t_stat) : json(nullptr)},
                    {"dof", r.dof},
                    {"log10_p", r.log10_p},
                    {"p_floor_applied", r.p_floor_applied},
                    {"cohens_d", std::isfinite(r.cohens_d) ? json(r.cohens_d) : json(nullptr)}};
    };
    ctx.aggregates["welch_adaptive_vs_static"] = test_json(welch_test(finals[0], finals[1]));
    ctx.aggregates["welch_adaptive_vs_hea"] = test_json(welch_test(finals[0], finals[2]));
}

void run_at16(Context& ctx) {
    const auto& cfg = ctx.cfg;
    const int l = cfg.l_list.front();
    for (Method m : {Method::Adaptive, Method::Static, Method::Hea}) {
        std::vector<double> xs, ys;
        for (int n : cfg.n_list) {
            const std::uint64_t key = std::uint64_t(n) * 10 + std::uint64_t(m);
            const auto trajs = run_seeds(cfg, ctx.root, m, n, l, cfg.schedule, key);
            std::vector<double> finals;
            for (int s = 0; s < cfg.n_seeds; ++s) {
                finals.push_back(trajs[std::size_t(s)].energy.back());
                ctx.per_seed.push_back({{"method", method_name(m)},
                                        {"n", n},
                                        {"seed", s},
                                        {"finals", {{"energy", finals.back()}}}});
            }
            xs.push_back(n);
            ys.push_back(mean_err(finals).mean);
        }
        ctx.series.push_back(
            series_entry(std::string("final_energy_") + method_name(m), xs, ys));
        ctx.aggregates[std::string("mean_final_") + method_name(m)] = ys;
    }
}

}  // namespace

void ExperimentConfig::validate() const {
    static const std::vector<std::string> known = {
        "at1", "at2", "at3", "at4", "at5", "at6", "at7", "at8",
        "at9", "at10", "at11", "at12", "at13", "at14", "at15", "at16"};
    if (std::find(known.begin(), known.end(), experiment_id) == known.end())
        throw std::invalid_argument("unknown experiment id: " + experiment_id);
    schedule.validate();
    if (n_list.empty() || l_list.empty()) throw std::invalid_argument("empty N or L list");
    if (scale == RunScale::Desk) {
        for (int n : n_list)
            if (n > 8)
                throw std::length_error("DESK scale caps N at 8 (requested N=" +
                                        std::to_string(n) + "); use --scale paper");
        if (n_seeds > 20 && experiment_id != "at10")
            throw std::length_error("DESK scale caps n_seeds at 20");
    }
    for (int n : n_list)
        if (n < 2 || n > kMaxQubits) throw std::length_error("N must be in [2, 14]");
    if (!noise_values.empty() || schedule.noise_p > 0.0)
        for (int n : n_list)
            if (n > kMaxMixedQubits)
                throw std::length_error("noisy experiments cap N at 10 (density matrix)");
}

ExperimentConfig default_config(const std::string& id, RunScale scale) {
    const bool paper = scale == RunScale::Paper;
    ExperimentConfig c;
    c.experiment_id = id;
    c.scale = scale;
    c.n_seeds = paper ? 50 : 20;
    c.n_list = paper ? std::vector<int>{2, 4, 6, 8, 10, 12, 14} : std::vector<int>{2, 4, 6, 8};
    c.l_list = paper ? std::vector<int>{2, 4, 6, 8, 10, 12, 14} : std::vector<int>{2, 4, 8};

    if (id == "at1") {
        if (!paper) c.l_list = {2, 4, 8};
    } else if (id == "at2") {
        c.n_list = {paper ? 14 : 8};
        c.l_list = {paper ? 14 : 8};
        const double s0 = sigma_zero(c.n_list[0], c.l_list[0], c.schedule.kappa);
        const double sc = sigma_crit(c.n_list[0], c.l_list[0], c.schedule.c2);
        c.sigma_values = {s0, sc / 2.0, sc, 0.1, 0.3, 1.0};
    } else if (id == "at3") {
        c.n_list = {8};
        c.l_list = {8};
        c.n_seeds = 10;
    } else if (id == "at4") {
        c.n_list = paper ? std::vector<int>{4, 8, 12} : std::vector<int>{4, 8};
        c.l_list = paper ? std::vector<int>{4, 8, 12} : std::vector<int>{4, 8};
        c.n_seeds = 1;
    } else if (id == "at5") {
        c.l_list = {2};
        c.n_seeds = 1;
    } else if (id == "at6") {
        c.n_list = {6};
        c.l_list = paper ? std::vector<int>{2, 4, 6, 8, 10, 12, 14} : std::vector<int>{2, 4, 8};
        c.n_seeds = 5;
    } else if (id == "at7") {
        c.n_seeds = 1;  // deterministic, no training
    } else if (id == "at8") {
        c.n_list = {8};
        c.l_list = {8};
        c.n_seeds = 1;
    } else if (id == "at9") {
        c.n_list = {8};
        c.l_list = paper ? std::vector<int>{2, 4, 6, 8, 10, 12, 14} : std::vector<int>{2, 4, 8};
        c.n_seeds = 15;  // samples per depth
    } else if (id == "at10") {
        c.n_list = {6};
        c.l_list = paper ? std::vector<int>{2, 4, 6, 8, 10} : std::vector<int>{2, 4, 8};
        c.n_seeds = 500;  // sampled circuits per point
    } else if (id == "at11") {
        c.n_list = {paper ? 8 : 4};
        c.l_list = {paper ? 8 : 4};
        c.n_seeds = paper ? 10 : 3;
        c.noise_values = {0.0, 1e-4, 1e-3, 1e-2};
    } else if (id == "at12") {
        c.n_list = {paper ? 8 : 4};
        c.l_list = {paper ? 4 : 2};
        c.n_seeds = 20;
        c.shot_values = {100, 1000, 10000};
    } else if (id == "at13") {
        c.n_list = {paper ? 8 : 4};
        c.l_list = {paper ? 8 : 4};
        c.n_seeds = paper ? 10 : 5;
        c.delta_switch_values = paper ? std::vector<double>{1e-4, 1e-3, 5e-3, 1e-2}
                                      : std::vector<double>{1e-4, 1e-3, 5e-3};
    } else if (id == "at14") {
        c.n_list = {paper ? 8 : 4};
        c.l_list = {paper ? 8 : 4};
        c.n_seeds = paper ? 10 : 5;
        c.lambda_values = paper ? std::vector<double>{0.005, 0.01, 0.02, 0.05, 0.1}
                                : std::vector<double>{0.01, 0.02, 0.1};
    } else if (id == "at15") {
        c.n_list = {4};
        c.l_list = {4};
        c.n_seeds = paper ? 50 : 20;
    } else if (id == "at16") {
        c.hamiltonian = HamiltonianKind::Xxz;
        c.n_list = paper ? std::vector<int>{4, 8, 12} : std::vector<int>{4};
        c.l_list = {4};
        c.n_seeds = 5;
    }
    return c;
}

PauliSum build_hamiltonian(HamiltonianKind kind, int n_qubits) {
    return kind == HamiltonianKind::Tfim ? build_tfim(n_qubits) : build_xxz(n_qubits);
}

json run_experiment(const ExperimentConfig& config) {
    config.validate();
    const auto start = std::chrono::system_clock::now();
    const auto t0 = std::chrono::steady_clock::now();

    Context ctx{config, RngStream(config.master_seed)};

    if (config.experiment_id == "at1") run_at1(ctx);
    else if (config.experiment_id == "at2") run_at2(ctx);
    else if (config.experiment_id == "at3") run_at3(ctx);
    else if (config.experiment_id == "at4") run_at4(ctx);
    else if (config.experiment_id == "at5") run_at5(ctx);
    else if (config.experiment_id == "at6") run_at6(ctx);
    else if (config.experiment_id == "at7") run_at7(ctx);
    else if (config.experiment_id == "at8") run_at8(ctx);
    else if (config.experiment_id == "at9") run_at9(ctx);
    else if (config.experiment_id == "at10") run_at10(ctx);
    else if (config.experiment_id == "at11") run_at11(ctx);
    else if (config.experiment_id == "at12") run_at12(ctx);
    else if (config.experiment_id == "at13")
        run_sweep(ctx, config.delta_switch_values, "delta_switch",
                  [](ScheduleConfig& s, double v) { s.delta_switch = v; });
    else if (config.experiment_id == "at14")
        run_sweep(ctx, config.lambda_values, "lambda",
                  [](ScheduleConfig& s, double v) { s.lambda = v; });
    else if (config.experiment_id == "at15") run_at15(ctx);
    else if (config.experiment_id == "at16") run_at16(ctx);

    json result;
    result["schema_version"] = kSchemaVersion;
    result["experiment_id"] = config.experiment_id;
    result["config"] = config_json(config);
    result["theory_constants"] = theory_block(config);
    result["per_seed"] = ctx.per_seed;
    result["aggregates"] = ctx.aggregates;
    result["series"] = ctx.series;

    const auto t1 = std::chrono::steady_clock::now();
    const std::time_t start_t = std::chrono::system_clock::to_time_t(start);
    char buf[64];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&start_t));
    result["meta"] = {{"start_time", buf},
                      {"duration_s", std::chrono::duration<double>(t1 - t0).count()},
                      {"version", kVersion}};
    return result;
}

std::string dump_without_meta(const json& result) {
    json copy = result;
    copy.erase("meta");
    return copy.dump(2);
}

void write_result(const json& result, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output path: " + path);
    out << result.dump(2) << "\n";
}

}  // namespace aheft
