#pragma once

#include <vector>

#include "cgsp/kernels.hpp"
#include "cgsp/reconstruct.hpp"
#include "cgsp/types.hpp"

namespace cgsp {

struct KernelDictionary {
    std::vector<KernelMatrix> kernels;

    int count() const { return static_cast<int>(kernels.size()); }
    Eigen::Index size() const { return kernels.empty() ? 0 : kernels.front().k.rows(); }
    void validate() const;
};

// sum_l omega_l K_l; weights must be nonnegative (tiny negatives clipped).
KernelMatrix combine(const KernelDictionary& dict, const RealVector& omega);

// Feasible point of {w >= 0, ||w - omega0||_1 <= radius} near omega:
// alternating projections (clip, then l1 ball re-centering) to 1e-10.
RealVector project_l1_ball_nonneg(const RealVector& omega, const RealVector& omega0,
                                  double radius);

struct MklConfig {
    double gamma = 1e-4;   // ridge weight, > 0
    double nu = 1e-3;      // l1 penalty on omega, >= 0
    double eta = 0.5;      // beta averaging factor in [0, 1)
    double eps = 1e-6;     // stop when ||beta_next - beta|| < eps
    double radius = 1.0;   // l1 trust region around omega0
    int max_iters = 200;
    int max_backtracks = 30;
    RealVector omega0;     // empty selects uniform 1/L

    void validate(int l) const;
};

struct MklResult {
    RealVector omega;
    ComplexVector beta;
    ComplexVector f_opt;           // length n
    ComplexVector fitted_samples;  // K_S(omega) beta
    int iterations = 0;
    bool converged = false;
    std::vector<double> objective_trace;  // G after init and after each iteration
};

// Alternating minimization of
//   G(omega, beta) = (1/|S|)||y - K_S(omega) beta||^2
//                  + gamma beta^H K_S(omega) beta + nu ||omega||_1
// over the feasible omega set: proximal projected gradient with backtracking
// on omega, damped closed-form update on beta. The recorded objective never
// increases.
MklResult mkl_fit(const KernelDictionary& dict, const SamplingPlan& plan, const ComplexVector& y,
                  const MklConfig& cfg);

}  // namespace cgsp
