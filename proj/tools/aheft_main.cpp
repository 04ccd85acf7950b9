// aheft: run a registered experiment or verify the built-in suites.

#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "aheft/acceptance.hpp"
#include "aheft/harness.hpp"

namespace {

int do_run(const std::string& experiment, const std::string& scale_s,
           const std::string& ham_s, const std::vector<int>& n_list,
           const std::vector<int>& l_list, int seeds, std::uint64_t master_seed, int steps,
           double lambda, double delta_switch, double kappa, double c2, double noise_p,
           const std::vector<long>& shots, std::string out_path, int workers) {
    using namespace aheft;
    const RunScale scale = scale_s == "paper" ? RunScale::Paper : RunScale::Desk;
    ExperimentConfig cfg = default_config(experiment, scale);
    if (ham_s == "tfim") cfg.hamiltonian = HamiltonianKind::Tfim;
    else if (ham_s == "xxz") cfg.hamiltonian = HamiltonianKind::Xxz;
    if (!n_list.empty()) cfg.n_list = n_list;
    if (!l_list.empty()) cfg.l_list = l_list;
    if (seeds > 0) cfg.n_seeds = seeds;
    cfg.master_seed = master_seed;
    if (steps > 0) cfg.schedule.total_steps = steps;
    if (lambda >= 0.0) cfg.schedule.lambda = lambda;
    if (delta_switch > 0.0) cfg.schedule.delta_switch = delta_switch;
    if (kappa > 0.0) cfg.schedule.kappa = kappa;
    if (c2 > 0.0) cfg.schedule.c2 = c2;
    if (noise_p >= 0.0) cfg.schedule.noise_p = noise_p;
    if (!shots.empty()) cfg.shot_values = shots;
    cfg.workers = workers;

    const json result = run_experiment(cfg);
    if (out_path.empty()) out_path = experiment + ".json";
    const auto parent = std::filesystem::path(out_path).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
    write_result(result, out_path);
    std::cout << experiment << ": " << result["per_seed"].size() << " records, "
              << result["series"].size() << " series -> " << out_path << " ("
              << result["meta"]["duration_s"].get<double>() << "s)\n";
    return 0;
}

int do_verify(const std::string& suite) {
    const auto results = suite == "invariants" ? aheft::run_invariants_suite(std::cout)
                                               : aheft::run_acceptance_suite(std::cout);
    int failed = 0;
    for (const auto& r : results)
        if (!r.passed) ++failed;
    std::cout << (failed == 0 ? "ALL PASS" : std::to_string(failed) + " FAILED") << " ("
              << results.size() << " checks)\n";
    return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"adaptive-initialization variational eigensolver laboratory"};
    app.require_subcommand(1);

    std::string experiment, scale = "desk", hamiltonian, out_path;
    std::vector<int> n_list, l_list;
    std::vector<long> shots;
    int seeds = 0, steps = 0, workers = 1;
    std::uint64_t master_seed = 0;
    double lambda = -1.0, delta_switch = 0.0, kappa = 0.0, c2 = 0.0, noise_p = -1.0;

    CLI::App* run = app.add_subcommand("run", "run one experiment and write JSON results");
    run->add_option("--experiment", experiment, "experiment id, at1..at16")->required();
    run->add_option("--scale", scale)->check(CLI::IsMember({"desk", "paper"}));
    run->add_option("--hamiltonian", hamiltonian)->check(CLI::IsMember({"tfim", "xxz"}));
    run->add_option("--n", n_list, "qubit counts");
    run->add_option("--layers", l_list, "layer counts");
    run->add_option("--seeds", seeds);
    run->add_option("--master-seed", master_seed);
    run->add_option("--steps", steps);
    run->add_option("--lambda", lambda);
    run->add_option("--delta-switch", delta_switch);
    run->add_option("--kappa", kappa);
    run->add_option("--c2", c2);
    run->add_option("--noise-p", noise_p);
    run->add_option("--shots", shots);
    run->add_option("--out", out_path);
    run->add_option("--workers", workers)->check(CLI::PositiveNumber);

    std::string suite = "acceptance";
    CLI::App* verify = app.add_subcommand("verify", "run the acceptance or invariants suite");
    verify->add_option("--suite", suite)->check(CLI::IsMember({"acceptance", "invariants"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (run->parsed())
            return do_run(experiment, scale, hamiltonian, n_list, l_list, seeds, master_seed,
                          steps, lambda, delta_switch, kappa, c2, noise_p, shots, out_path,
                          workers);
        return do_verify(suite);
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
