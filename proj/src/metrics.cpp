#include "aheft/metrics.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace aheft {

GVReport gv_report(const std::vector<GradientVector>& gradients) {
    if (gradients.size() < 2) throw std::domain_error("gv_report needs at least 2 gradients");
    const std::size_t p = gradients.front().size();
    for (const auto& g : gradients)
        if (g.size() != p) throw std::length_error("gv_report: gradient lengths differ");

    GVReport rep;
    rep.n_seeds = int(gradients.size());
    const double n = double(gradients.size());

    std::vector<double> sq_norms;
    sq_norms.reserve(gradients.size());
    for (const auto& g : gradients) {
        double s = 0.0;
        for (double v : g) s += v * v;
        sq_norms.push_back(s);
    }
    double mean = 0.0;
    for (double s : sq_norms) mean += s;
    mean /= n;
    double var = 0.0;
    for (double s : sq_norms) var += (s - mean) * (s - mean);
    var /= (n - 1.0);
    rep.mean_sq_norm = mean;
    rep.std_err = std::sqrt(var / n);

    rep.per_param_variance.assign(p, 0.0);
    for (std::size_t j = 0; j < p; ++j) {
        double m = 0.0;
        for (const auto& g : gradients) m += g[j];
        m /= n;
        double v = 0.0;
        for (const auto& g : gradients) v += (g[j] - m) * (g[j] - m);
        rep.per_param_variance[j] = v / (n - 1.0);
    }
    return rep;
}

int effective_dimension(const PureState& state, double eps_thr) {
    if (eps_thr <= 0.0) throw std::domain_error("eps_thr must be > 0");
    int count = 0;
    for (const auto& a : state.amplitudes)
        if (std::abs(a) > eps_thr) ++count;
    return count;
}

double fidelity_to_ground(const PureState& state, const GroundSolution& gs) {
    double proj = 0.0;
    for (const auto& b : gs.basis) proj += std::norm(overlap(b, state));
    return proj;
}

double expressibility_purity(const AnsatzSpec& spec, const ParamSampler& sampler,
                             int n_samples, RngStream& rng) {
    if (n_samples < 2) throw std::domain_error("expressibility_purity needs K >= 2");
    AnsatzSpec sample_spec = spec;
    if (sampler.uniform) sample_spec.kind = AnsatzKind::Hea;
    std::vector<PureState> states;
    states.reserve(std::size_t(n_samples));
    for (int k = 0; k < n_samples; ++k) {
        RngStream sub = rng.substream({std::uint64_t(k)});
        const ParamVector theta =
            init_params(sample_spec, sampler.uniform ? 0.0 : sampler.sigma, sub);
        states.push_back(run_circuit(sample_spec, theta));
    }
    double acc = 0.0;
    for (int i = 0; i < n_samples; ++i)
        for (int j = i + 1; j < n_samples; ++j)
            acc += std::norm(overlap(states[std::size_t(i)], states[std::size_t(j)]));
    // ordered pairs double the unordered sum and cancel in the mean
    return acc / (0.5 * double(n_samples) * double(n_samples - 1));
}

AmplitudeBoundReport amplitude_bound_report(const PureState& state, int m_tot, double sigma) {
    if (sigma <= 0.0) throw std::domain_error("sigma must be > 0");
    const int n = state.n_qubits;
    AmplitudeBoundReport rep;
    rep.per_weight_max_amp.assign(std::size_t(n) + 1, 0.0);
    for (std::size_t x = 0; x < state.dim(); ++x) {
        const int w = std::popcount(x);
        rep.per_weight_max_amp[std::size_t(w)] =
            std::max(rep.per_weight_max_amp[std::size_t(w)], std::abs(state.amplitudes[x]));
    }
    rep.per_weight_bound.assign(std::size_t(n) + 1, 0.0);
    double fact = 1.0;
    double pw = 1.0;
    for (int w = 0; w <= n; ++w) {
        if (w > 0) {
            fact *= double(w);
            pw *= double(m_tot) * sigma;
        }
        rep.per_weight_bound[std::size_t(w)] = pw / fact;
    }
    for (int w = 1; w <= n; ++w) {  // weight 0 excluded
        const double ratio = rep.per_weight_max_amp[std::size_t(w)] / rep.per_weight_bound[std::size_t(w)];
        if (ratio > rep.max_ratio) {
            rep.max_ratio = ratio;
            if (ratio > 1.0) rep.violating_weight = w;
        }
    }
    return rep;
}

}  // namespace aheft
