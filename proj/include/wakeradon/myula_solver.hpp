#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "wakeradon/cauchy_prior.hpp"
#include "wakeradon/geometry_transforms.hpp"
#include "wakeradon/types.hpp"

namespace wakeradon {

enum class PointEstimate { kFinalIterate, kTrailingMean };

/// Solver knobs. Zeroed fields are resolved against the estimated (or
/// user-supplied) Lipschitz constant: delta = delta_over_L / L and
/// omega = omega_times_inv_L / L with the conservative defaults 1/25 and 1/4.
struct SolverConfig {
    double gamma = 0.01;       ///< Cauchy prior scale
    double lipschitz = 0.0;    ///< L; 0 means estimate by power iteration
    double delta = 0.0;        ///< explicit step size; 0 means delta_over_L / L
    double omega = 0.0;        ///< explicit smoothing; 0 means omega_times_inv_L / L
    double delta_over_L = 1.0 / 25.0;
    double omega_times_inv_L = 0.25;
    int max_iter = 200;
    double tol = 1e-3;
    std::uint64_t seed = 0;
    double noise_scale = 1.0;  ///< 1 = stochastic sampling step, 0 = deterministic debug mode
    int n_theta = 180;         ///< Radon grid resolution used for the estimate
    PointEstimate estimate = PointEstimate::kFinalIterate;
    int trailing_window = 50;
};

/// Fully resolved scalars actually used by the iteration.
struct ResolvedSolver {
    double gamma = 0.0;
    double lipschitz = 0.0;
    double delta = 0.0;
    double omega = 0.0;
    int max_iter = 0;
    double tol = 0.0;
    std::uint64_t seed = 0;
    double noise_scale = 1.0;
    bool lipschitz_estimated = false;
    bool lipschitz_converged = true;

    /// Stability interval from the discretization: 0 < delta <= omega/(L*omega + 1).
    void validate() const;
};

struct SolverDiagnostics {
    int iterations_run = 0;
    std::vector<double> epsilon_trace;
    bool converged = false;
    double final_epsilon = 0.0;
    double wall_time_s = 0.0;
    ResolvedSolver resolved;
    bool input_standardized = true;  ///< recorded for auditability
    double input_mean = 0.0;
    double input_std = 0.0;
    std::uint64_t multiple_root_events = 0;
    std::vector<std::string> warnings;
};

/// Resolve defaults against L (estimating it if needed) and validate.
/// gamma outside [0.0001, 0.1] appends a warning, it is not an error.
ResolvedSolver resolve_solver(const SolverConfig& cfg, const RadonGrid& grid,
                              std::vector<std::string>* warnings = nullptr);

/// Gradient of the data fidelity f(X) = ||Y - C X||^2:
/// 2 * C^T (C X - Y). Affine in X.
RadonImage grad_data_fidelity(const RadonImage& X, const Image& Y);

/// One sampling step:
/// X' = (1 - delta/omega) X - delta grad_f(X) + (delta/omega) prox(X)
///      + noise_scale * sqrt(2 delta) Z.
RadonImage myula_step(const RadonImage& X, const Image& Y, const ResolvedSolver& cfg,
                      const RadonImage& noise_draw);

/// Relative iterate change ||X - X_prev||_F / ||X_prev||_F. A zero previous
/// iterate yields +infinity, never a spurious "converged".
double relative_change(const RadonImage& X, const RadonImage& X_prev);

/// Runs the chain from X0 = radon_forward(standardized Y), with one
/// counter-seeded standard normal draw per Radon bin per iteration, until
/// the relative change drops to tol or max_iter is reached. Returns the
/// point estimate and diagnostics. Deterministic for a fixed seed and
/// independent of the worker count.
///
/// Throws DivergenceError naming the iteration if an iterate goes
/// non-finite.
std::pair<RadonImage, SolverDiagnostics> run_myula(const Image& Y, const SolverConfig& cfg);

}  // namespace wakeradon
