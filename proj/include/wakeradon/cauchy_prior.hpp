#pragma once

#include "wakeradon/types.hpp"

namespace wakeradon {

/// Dispersion (scale) of the Cauchy prior. The working range of interest is
/// [0.0001, 0.1]; values outside are legal here, callers warn where needed.
struct CauchyParams {
    double gamma = 0.01;

    void validate() const {
        if (!(gamma > 0.0)) throw ConfigurationError("CauchyParams: gamma must be positive");
    }
};

/// Moreau-Yoshida smoothing parameter of the proximal operator.
struct ProxParams {
    double omega = 0.25;

    void validate() const {
        if (!(omega > 0.0)) throw ConfigurationError("ProxParams: omega must be positive");
    }
};

/// Negative log prior g(x) = log(gamma^2 + x^2) - log(gamma). Even in x,
/// minimized at x = 0.
double cauchy_neg_log_prior(double x, const CauchyParams& p);

/// The objective minimized by the proximal operator:
/// g(u) + (u - x)^2 / (2 omega).
double cauchy_prox_objective(double u, double x, const CauchyParams& p, const ProxParams& w);

/// Proximal operator of the Cauchy negative log prior in closed form.
///
/// The minimizer is a real root of the cubic
///   u^3 - x u^2 + (gamma^2 + 2 omega) u - x gamma^2 = 0.
/// In the single-real-root regime (positive discriminant) the root comes
/// from Cardano's formula with both cube-root radicands built from the
/// depressed-cubic q term; in the three-real-root regime all roots are
/// computed trigonometrically and the one with the smallest objective wins,
/// ties broken toward the root of largest magnitude. The returned root is
/// Newton-polished so the cubic residual stays below 1e-8 * (1 + |x|^3).
///
/// Exactly odd: cauchy_prox_scalar(-x, ...) == -cauchy_prox_scalar(x, ...).
double cauchy_prox_scalar(double x, const CauchyParams& p, const ProxParams& w);

/// Variant with the second cube-root radicand built from the p term instead
/// of q. It is wrong (it violates prox(0) = 0) and exists only so the
/// self-test can demonstrate the difference against the oracle.
double cauchy_prox_scalar_p_radicand(double x, const CauchyParams& p, const ProxParams& w);

/// Process-wide count of scalar evaluations that hit the three-real-root
/// regime (the regularized objective is non-convex there). The solver polls
/// it to surface a warning instead of silently assuming uniqueness.
std::uint64_t cauchy_prox_multiple_root_count();
void cauchy_prox_reset_multiple_root_count();

/// Element-wise proximal operator over a Radon image (the prior is
/// separable). Shape preserved.
RadonImage cauchy_prox_field(const RadonImage& rimg, const CauchyParams& p, const ProxParams& w);

}  // namespace wakeradon
