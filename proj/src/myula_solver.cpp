#include "wakeradon/myula_solver.hpp"

#include <chrono>
#include <cmath>
#include <limits>

#include "wakeradon/parallel.hpp"
#include "wakeradon/rng.hpp"

namespace wakeradon {

void ResolvedSolver::validate() const {
    if (!(gamma > 0.0)) throw ConfigurationError("solver: gamma must be positive");
    if (!(lipschitz > 0.0)) throw ConfigurationError("solver: Lipschitz constant must be positive");
    if (!(delta > 0.0)) throw ConfigurationError("solver: delta must be positive");
    if (!(omega > 0.0)) throw ConfigurationError("solver: omega must be positive");
    const double delta_cap = omega / (lipschitz * omega + 1.0);
    if (delta > delta_cap * (1.0 + 1e-12))
        throw ConfigurationError("solver: delta violates the stability interval (0, omega/(L*omega+1)]");
    if (max_iter <= 0) throw ConfigurationError("solver: max_iter must be positive");
    if (!(tol > 0.0)) throw ConfigurationError("solver: tol must be positive");
    if (noise_scale != 0.0 && noise_scale != 1.0)
        throw ConfigurationError("solver: noise_scale must be 0 or 1");
}

ResolvedSolver resolve_solver(const SolverConfig& cfg, const RadonGrid& grid,
                              std::vector<std::string>* warnings) {
    ResolvedSolver r;
    r.gamma = cfg.gamma;
    r.max_iter = cfg.max_iter;
    r.tol = cfg.tol;
    r.seed = cfg.seed;
    r.noise_scale = cfg.noise_scale;

    if (cfg.lipschitz > 0.0) {
        r.lipschitz = cfg.lipschitz;
    } else {
        const LipschitzEstimate est = estimate_lipschitz(grid, grid.side);
        r.lipschitz = est.value;
        r.lipschitz_estimated = true;
        r.lipschitz_converged = est.converged;
        if (!est.converged && warnings)
            warnings->push_back("lipschitz power iteration did not converge; using last estimate");
        if (r.lipschitz <= 0.0)
            throw ConfigurationError("solver: estimated Lipschitz constant is zero");
    }
    r.delta = cfg.delta > 0.0 ? cfg.delta : cfg.delta_over_L / r.lipschitz;
    r.omega = cfg.omega > 0.0 ? cfg.omega : cfg.omega_times_inv_L / r.lipschitz;
    if (warnings && (cfg.gamma < 0.0001 || cfg.gamma > 0.1))
        warnings->push_back("gamma outside the working range [0.0001, 0.1]");
    r.validate();
    return r;
}

RadonImage grad_data_fidelity(const RadonImage& X, const Image& Y) {
    if (X.grid().side != Y.side())
        throw DimensionError("grad_data_fidelity: image side does not match the Radon grid");
    Image residual = radon_inverse(X);
    for (std::size_t k = 0; k < residual.size(); ++k) residual.pixels()[k] -= Y.pixels()[k];
    RadonImage grad = radon_inverse_adjoint(residual, X.grid());
    for (double& v : grad.values()) v *= 2.0;
    return grad;
}

RadonImage myula_step(const RadonImage& X, const Image& Y, const ResolvedSolver& cfg,
                      const RadonImage& noise_draw) {
    if (!(X.grid() == noise_draw.grid()))
        throw DimensionError("myula_step: noise draw grid does not match the iterate");
    cfg.validate();

    const RadonImage grad = grad_data_fidelity(X, Y);
    const RadonImage proxed = cauchy_prox_field(X, CauchyParams{cfg.gamma}, ProxParams{cfg.omega});

    const double mix = 1.0 - cfg.delta / cfg.omega;
    const double prox_weight = cfg.delta / cfg.omega;
    const double noise_weight = cfg.noise_scale * std::sqrt(2.0 * cfg.delta);

    RadonImage out(X.grid());
    const int n = static_cast<int>(out.size());
    parallel_for(n, [&](int begin, int end) {
        for (int k = begin; k < end; ++k) {
            out.values()[k] = mix * X.values()[k] - cfg.delta * grad.values()[k] +
                              prox_weight * proxed.values()[k] +
                              noise_weight * noise_draw.values()[k];
        }
    });
    return out;
}

double relative_change(const RadonImage& X, const RadonImage& X_prev) {
    if (!(X.grid() == X_prev.grid()))
        throw DimensionError("relative_change: grids do not match");
    const double denom = frobenius_norm(X_prev);
    if (denom == 0.0) return std::numeric_limits<double>::infinity();
    double num = 0.0;
    for (std::size_t k = 0; k < X.size(); ++k) {
        const double d = X.values()[k] - X_prev.values()[k];
        num += d * d;
    }
    return std::sqrt(num) / denom;
}

std::pair<RadonImage, SolverDiagnostics> run_myula(const Image& Y, const SolverConfig& cfg) {
    if (!Y.all_finite()) throw ConfigurationError("run_myula: input image has non-finite pixels");
    const auto t0 = std::chrono::steady_clock::now();

    SolverDiagnostics diag;
    const RadonGrid grid = RadonGrid::for_image(Y.side(), cfg.n_theta);
    diag.resolved = resolve_solver(cfg, grid, &diag.warnings);

    MeanStd stats;
    const Image Ys = standardize(Y, &stats);
    diag.input_standardized = true;
    diag.input_mean = stats.mean;
    diag.input_std = stats.std;

    cauchy_prox_reset_multiple_root_count();

    RadonImage X = radon_forward(Ys, grid);
    const int window = std::max(1, cfg.trailing_window);
    std::vector<RadonImage> trailing;  // ring buffer of the last `window` iterates
    if (cfg.estimate == PointEstimate::kTrailingMean) trailing.reserve(window);
    int trailing_next = 0;

    diag.final_epsilon = std::numeric_limits<double>::infinity();
    for (int iter = 1; iter <= diag.resolved.max_iter; ++iter) {
        RadonImage noise(grid);
        if (diag.resolved.noise_scale != 0.0) {
            std::vector<double>& z = noise.values();
            const std::uint64_t seed = diag.resolved.seed;
            const int n = static_cast<int>(z.size());
            parallel_for(n, [&, iter](int begin, int end) {
                for (int k = begin; k < end; ++k)
                    z[k] = rng::normal(seed, static_cast<std::uint64_t>(iter), k);
            });
        }

        RadonImage X_next = myula_step(X, Ys, diag.resolved, noise);
        if (!X_next.all_finite())
            throw DivergenceError("run_myula: non-finite iterate at iteration " +
                                  std::to_string(iter));

        const double eps = relative_change(X_next, X);
        diag.epsilon_trace.push_back(eps);
        diag.final_epsilon = eps;
        diag.iterations_run = iter;
        X = std::move(X_next);

        if (cfg.estimate == PointEstimate::kTrailingMean) {
            if (static_cast<int>(trailing.size()) < window) {
                trailing.push_back(X);
            } else {
                trailing[trailing_next] = X;
            }
            trailing_next = (trailing_next + 1) % window;
        }

        if (eps <= diag.resolved.tol) {
            diag.converged = true;
            break;
        }
    }

    diag.multiple_root_events = cauchy_prox_multiple_root_count();
    if (diag.multiple_root_events > 0)
        diag.warnings.push_back("prox hit the non-convex three-real-root regime " +
                                std::to_string(diag.multiple_root_events) + " times");

    RadonImage estimate = X;
    if (cfg.estimate == PointEstimate::kTrailingMean && !trailing.empty()) {
        estimate = RadonImage(grid);
        for (const RadonImage& it : trailing)
            for (std::size_t k = 0; k < estimate.size(); ++k)
                estimate.values()[k] += it.values()[k];
        for (double& v : estimate.values()) v /= static_cast<double>(trailing.size());
    }

    diag.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return {std::move(estimate), std::move(diag)};
}

}  // namespace wakeradon
