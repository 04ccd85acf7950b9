// Experiment registry AT1-AT16: configuration, seed-parallel execution,
// and JSON persistence of results and plot-ready series.

#pragma once

#include <cstdint>
#include <string>

#include <nlohmann/json.hpp>

#include "aheft/training.hpp"

namespace aheft {

using json = nlohmann::json;

enum class HamiltonianKind { Tfim, Xxz };
enum class RunScale { Desk, Paper };

struct ExperimentConfig {
    std::string experiment_id;  // "at1" .. "at16"
    HamiltonianKind hamiltonian = HamiltonianKind::Tfim;
    std::vector<int> n_list;
    std::vector<int> l_list;
    int n_seeds = 0;
    std::uint64_t master_seed = 0;
    ScheduleConfig schedule;
    RunScale scale = RunScale::Desk;
    int workers = 1;
    // sweep grids (used by the experiments that sweep them)
    std::vector<double> sigma_values;
    std::vector<double> delta_switch_values;
    std::vector<double> lambda_values;
    std::vector<double> noise_values;
    std::vector<long> shot_values;

    void validate() const;  // enforces the DESK caps (N <= 8, seeds <= 20)
};

// Registry defaults for an experiment at a given scale. Seed counts follow
// the per-figure protocols (e.g. 5 seeds for the fidelity experiment).
ExperimentConfig default_config(const std::string& experiment_id, RunScale scale);

PauliSum build_hamiltonian(HamiltonianKind kind, int n_qubits);

// Deterministic for a fixed config; the "meta" block is the only
// invocation-dependent part of the document.
json run_experiment(const ExperimentConfig& config);

// Serialize with the meta block removed (byte-identity comparisons).
std::string dump_without_meta(const json& result);

void write_result(const json& result, const std::string& path);

}  // namespace aheft
