// Observables the experiments aggregate: gradient-variance statistics,
// effective dimension, ground-state fidelity, expressibility purity, and
// the Hamming-weight amplitude-bound diagnostic.

#pragma once

#include <optional>

#include "aheft/ansatz.hpp"
#include "aheft/gradients.hpp"
#include "aheft/ground.hpp"

namespace aheft {

struct GVReport {
    double mean_sq_norm = 0.0;               // <||grad C||^2> over seeds
    double std_err = 0.0;                    // standard error of the mean above
    std::vector<double> per_param_variance;  // unbiased Var[d_j C] over seeds
    int n_seeds = 0;
};

GVReport gv_report(const std::vector<GradientVector>& gradients);

// Count of basis amplitudes with |amplitude| > eps_thr (magnitude, not
// probability, following the d_eff convention used throughout).
int effective_dimension(const PureState& state, double eps_thr = 1e-6);

// Squared norm of the projection onto the ground space, in [0, 1].
double fidelity_to_ground(const PureState& state, const GroundSolution& gs);

struct ParamSampler {
    bool uniform = false;  // true: U[0, 2pi) (HEA); false: N(0, sigma^2)
    double sigma = 0.0;

    static ParamSampler gaussian(double sigma) { return {false, sigma}; }
    static ParamSampler haar_uniform() { return {true, 0.0}; }
};

// Pairwise-overlap estimator of ensemble purity Tr(rho_ens^2): mean of
// |<psi_i|psi_j>|^2 over all ordered pairs i != j of K sampled states.
double expressibility_purity(const AnsatzSpec& spec, const ParamSampler& sampler,
                             int n_samples, RngStream& rng);

struct AmplitudeBoundReport {
    double max_ratio = 0.0;  // max over weights w >= 1 of max|amp_w| / ((M sigma)^w / w!)
    std::optional<int> violating_weight;  // weight of the max ratio if it exceeds 1
    std::vector<double> per_weight_max_amp;
    std::vector<double> per_weight_bound;
};

// Diagnostic only; no assertion is implied by a ratio above 1.
AmplitudeBoundReport amplitude_bound_report(const PureState& state, int m_tot, double sigma);

}  // namespace aheft
