// Python bindings for the core operations: Hamiltonians, ground states,
// ansatz circuits, gradients, training loops, statistics, and the
// experiment harness (as JSON strings).

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "aheft/harness.hpp"
#include "aheft/metrics.hpp"
#include "aheft/stats.hpp"

namespace py = pybind11;
using namespace aheft;

namespace {

AnsatzSpec make_spec(const std::string& kind, int n, int l) {
    AnsatzSpec spec;
    spec.kind = kind == "hea" ? AnsatzKind::Hea : AnsatzKind::HeftSpin;
    spec.n_qubits = n;
    spec.layers = l;
    validate_spec(spec);
    return spec;
}

PauliSum make_hamiltonian(const std::string& kind, int n) {
    return build_hamiltonian(kind == "xxz" ? HamiltonianKind::Xxz : HamiltonianKind::Tfim, n);
}

py::dict traj_dict(const TrajectoryRecord& tr) {
    py::dict d;
    d["energy"] = tr.energy;
    d["grad_norm2"] = tr.grad_norm2;
    d["sigma"] = tr.sigma;
    d["deff_step"] = tr.deff_step;
    d["deff"] = tr.deff;
    d["final_theta"] = tr.final_theta;
    d["t_switch"] = tr.t_switch ? py::cast(*tr.t_switch) : py::none();
    d["forced_switch"] = tr.forced_switch;
    d["failed"] = tr.failed;
    return d;
}

}  // namespace

PYBIND11_MODULE(_aheft, m) {
    m.doc() = "adaptive-initialization variational eigensolver core";

    py::class_<ScheduleConfig>(m, "ScheduleConfig")
        .def(py::init<>())
        .def_readwrite("kappa", &ScheduleConfig::kappa)
        .def_readwrite("lambda_", &ScheduleConfig::lambda)
        .def_readwrite("c1", &ScheduleConfig::c1)
        .def_readwrite("c2", &ScheduleConfig::c2)
        .def_readwrite("delta_switch", &ScheduleConfig::delta_switch)
        .def_readwrite("burn_in", &ScheduleConfig::burn_in)
        .def_readwrite("total_steps", &ScheduleConfig::total_steps)
        .def_readwrite("phase1_cap", &ScheduleConfig::phase1_cap)
        .def_readwrite("eta", &ScheduleConfig::eta)
        .def_readwrite("noise_p", &ScheduleConfig::noise_p)
        .def_readwrite("log_deff_every", &ScheduleConfig::log_deff_every);

    m.def("sigma_zero", &sigma_zero, py::arg("n"), py::arg("layers"), py::arg("kappa") = 0.1);
    m.def("sigma_crit", &sigma_crit, py::arg("n"), py::arg("layers"), py::arg("c2") = 0.5);
    m.def("theory_constants", [](int n, int l, double c1, double c2, double b) {
        const TheoryConstants tc = theory_constants(n, l, c1, c2, b);
        py::dict d;
        d["delta_eff"] = tc.delta_eff;
        d["w_max"] = tc.w_max;
        d["kappa_lb"] = tc.kappa_lb;
        return d;
    }, py::arg("n"), py::arg("l"), py::arg("c1") = 2.0, py::arg("c2") = 0.5, py::arg("b") = 0.0);

    m.def("ground_energy",
          [](const std::string& kind, int n) { return ground_state(make_hamiltonian(kind, n)).energy; },
          py::arg("hamiltonian"), py::arg("n"));
    m.def("reference_gap",
          [](const std::string& kind, int n) { return reference_gap(make_hamiltonian(kind, n)); },
          py::arg("hamiltonian"), py::arg("n"));
    m.def("op_norm_bound",
          [](const std::string& kind, int n) { return op_norm_bound(make_hamiltonian(kind, n)); },
          py::arg("hamiltonian"), py::arg("n"));

    m.def("param_count",
          [](const std::string& ansatz, int n, int l) { return param_count(make_spec(ansatz, n, l)); },
          py::arg("ansatz"), py::arg("n"), py::arg("layers"));
    m.def("statevector",
          [](const std::string& ansatz, int n, int l, const ParamVector& theta) {
              return run_circuit(make_spec(ansatz, n, l), theta).amplitudes;
          },
          py::arg("ansatz"), py::arg("n"), py::arg("layers"), py::arg("theta"));
    m.def("energy",
          [](const std::string& ansatz, const std::string& ham, int n, int l,
             const ParamVector& theta, double noise_p) {
              return energy(make_spec(ansatz, n, l), theta, make_hamiltonian(ham, n), noise_p);
          },
          py::arg("ansatz"), py::arg("hamiltonian"), py::arg("n"), py::arg("layers"),
          py::arg("theta"), py::arg("noise_p") = 0.0);
    m.def("gradient",
          [](const std::string& ansatz, const std::string& ham, int n, int l,
             const ParamVector& theta, double noise_p) {
              return gradient_exact(make_spec(ansatz, n, l), theta, make_hamiltonian(ham, n),
                                    noise_p);
          },
          py::arg("ansatz"), py::arg("hamiltonian"), py::arg("n"), py::arg("layers"),
          py::arg("theta"), py::arg("noise_p") = 0.0);

    m.def("train",
          [](const std::string& method, const std::string& ham, int n, int l,
             const ScheduleConfig& cfg, std::uint64_t seed) {
              const AnsatzSpec spec = make_spec(method == "hea" ? "hea" : "heft", n, l);
              const PauliSum h = make_hamiltonian(ham, n);
              const RngStream rng = RngStream(seed).substream({0});
              if (method == "adaptive") return traj_dict(run_adaptive(spec, h, cfg, rng));
              if (method == "static") return traj_dict(run_static(spec, h, cfg, rng));
              if (method == "hea") return traj_dict(run_hea(spec, h, cfg, rng));
              throw std::invalid_argument("method must be adaptive, static, or hea");
          },
          py::arg("method"), py::arg("hamiltonian"), py::arg("n"), py::arg("layers"),
          py::arg("config") = ScheduleConfig{}, py::arg("seed") = 0);

    m.def("welch_test", [](const std::vector<double>& a, const std::vector<double>& b) {
        const StatTestResult r = welch_test(a, b);
        py::dict d;
        d["t_stat"] = r.t_stat;
        d["dof"] = r.dof;
        d["log10_p"] = r.log10_p;
        d["p_floor_applied"] = r.p_floor_applied;
        d["cohens_d"] = r.cohens_d;
        return d;
    });

    m.def("run_experiment_json",
          [](const std::string& experiment, const std::string& scale, std::uint64_t master_seed,
             int workers) {
              ExperimentConfig cfg = default_config(
                  experiment, scale == "paper" ? RunScale::Paper : RunScale::Desk);
              cfg.master_seed = master_seed;
              cfg.workers = workers;
              return run_experiment(cfg).dump();
          },
          py::arg("experiment"), py::arg("scale") = "desk", py::arg("master_seed") = 0,
          py::arg("workers") = 1);
}
