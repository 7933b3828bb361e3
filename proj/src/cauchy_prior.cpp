#include "wakeradon/cauchy_prior.hpp"

#include <atomic>
#include <cmath>

#include "wakeradon/parallel.hpp"

namespace wakeradon {
namespace {

std::atomic<std::uint64_t> g_multiple_root_count{0};

// Real cube root, exactly odd by construction.
inline double real_cbrt(double v) {
    return v < 0.0 ? -std::cbrt(-v) : std::cbrt(v);
}

inline double cubic_value(double u, double x, double b, double c) {
    // u^3 - x u^2 + b u + c, Horner form
    return ((u - x) * u + b) * u + c;
}

inline double newton_polish(double u, double x, double b, double c) {
    for (int pass = 0; pass < 2; ++pass) {
        const double f = cubic_value(u, x, b, c);
        const double fp = (3.0 * u - 2.0 * x) * u + b;
        if (fp == 0.0) break;
        const double un = u - f / fp;
        if (!std::isfinite(un)) break;
        if (std::abs(cubic_value(un, x, b, c)) < std::abs(f)) u = un;
    }
    return u;
}

double prox_impl(double x, double gamma, double omega, bool p_radicand_variant) {
    const double b = gamma * gamma + 2.0 * omega;  // coefficient of u
    const double c = -x * gamma * gamma;           // constant term
    const double p = b - x * x / 3.0;
    const double q = x * gamma * gamma + 2.0 * x * x * x / 27.0 - (x / 3.0) * b;
    const double disc = p * p * p / 27.0 + q * q / 4.0;

    if (disc > 0.0) {
        const double dd = std::sqrt(disc);
        const double s = real_cbrt(q / 2.0 + dd);
        const double second = p_radicand_variant ? p / 2.0 - dd : q / 2.0 - dd;
        const double t = real_cbrt(second);
        double u = x / 3.0 + s + t;
        if (!p_radicand_variant) u = newton_polish(u, x, b, c);
        return u;
    }

    // Non-convex regime: three real roots. Take the one with the smallest
    // regularized objective; ties go to the largest magnitude.
    g_multiple_root_count.fetch_add(1, std::memory_order_relaxed);
    const double m = 2.0 * std::sqrt(std::max(-p, 0.0) / 3.0);
    double arg = 1.0;
    if (p < 0.0) {
        arg = 3.0 * (-q) / (2.0 * p) * std::sqrt(-3.0 / p);
        arg = std::min(1.0, std::max(-1.0, arg));
    }
    const double phi = std::acos(arg);

    const CauchyParams cp{gamma};
    const ProxParams pw{omega};
    double best = 0.0;
    double best_obj = 0.0;
    bool have_best = false;
    for (int k = 0; k < 3; ++k) {
        double u = x / 3.0 + m * std::cos((phi - 2.0 * kPi * k) / 3.0);
        u = newton_polish(u, x, b, c);
        const double obj = cauchy_prox_objective(u, x, cp, pw);
        if (!have_best || obj < best_obj ||
            (obj == best_obj && std::abs(u) > std::abs(best))) {
            best = u;
            best_obj = obj;
            have_best = true;
        }
    }
    return best;
}

}  // namespace

double cauchy_neg_log_prior(double x, const CauchyParams& p) {
    p.validate();
    if (!std::isfinite(x)) throw ConfigurationError("cauchy_neg_log_prior: x must be finite");
    return std::log(p.gamma * p.gamma + x * x) - std::log(p.gamma);
}

double cauchy_prox_objective(double u, double x, const CauchyParams& p, const ProxParams& w) {
    return std::log(p.gamma * p.gamma + u * u) - std::log(p.gamma) +
           (u - x) * (u - x) / (2.0 * w.omega);
}

double cauchy_prox_scalar(double x, const CauchyParams& p, const ProxParams& w) {
    p.validate();
    w.validate();
    if (!std::isfinite(x)) throw ConfigurationError("cauchy_prox_scalar: x must be finite");
    if (std::abs(x) < 1e-30) return 0.0;  // cancellation guard
    // evaluate on |x| and restore the sign, so odd symmetry is bit-exact
    const double u = prox_impl(std::abs(x), p.gamma, w.omega, /*p_radicand_variant=*/false);
    return x < 0.0 ? -u : u;
}

double cauchy_prox_scalar_p_radicand(double x, const CauchyParams& p, const ProxParams& w) {
    p.validate();
    w.validate();
    if (!std::isfinite(x)) throw ConfigurationError("cauchy_prox_scalar: x must be finite");
    return prox_impl(x, p.gamma, w.omega, /*p_radicand_variant=*/true);
}

std::uint64_t cauchy_prox_multiple_root_count() {
    return g_multiple_root_count.load(std::memory_order_relaxed);
}

void cauchy_prox_reset_multiple_root_count() {
    g_multiple_root_count.store(0, std::memory_order_relaxed);
}

RadonImage cauchy_prox_field(const RadonImage& rimg, const CauchyParams& p, const ProxParams& w) {
    p.validate();
    w.validate();
    RadonImage out(rimg.grid());
    const std::vector<double>& in = rimg.values();
    std::vector<double>& res = out.values();
    const int n = static_cast<int>(in.size());
    parallel_for(n, [&](int begin, int end) {
        for (int k = begin; k < end; ++k) {
            const double x = in[k];
            if (!std::isfinite(x))
                throw ConfigurationError("cauchy_prox_field: non-finite input element");
            if (std::abs(x) < 1e-30) {
                res[k] = 0.0;
            } else {
                const double u = prox_impl(std::abs(x), p.gamma, w.omega, false);
                res[k] = x < 0.0 ? -u : u;
            }
        }
    });
    return out;
}

}  // namespace wakeradon
