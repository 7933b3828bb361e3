#include "wakeradon/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "wakeradon/cauchy_prior.hpp"
#include "wakeradon/config.hpp"
#include "wakeradon/geometry_transforms.hpp"
#include "wakeradon/rng.hpp"
#include "wakeradon/types.hpp"

namespace wakeradon {
namespace {

// Grid scan plus golden-section refinement; independent of the closed form.
double prox_oracle(double x, const CauchyParams& p, const ProxParams& w, int grid_n = 4001) {
    const double lo = -std::abs(x) - 1e-12;
    const double hi = std::abs(x) + 1e-12;
    double best_u = 0.0;
    double best_J = cauchy_prox_objective(0.0, x, p, w);
    for (int k = 0; k < grid_n; ++k) {
        const double u = lo + (hi - lo) * k / (grid_n - 1);
        const double J = cauchy_prox_objective(u, x, p, w);
        if (J < best_J) {
            best_J = J;
            best_u = u;
        }
    }
    double a = best_u - (hi - lo) / (grid_n - 1);
    double b = best_u + (hi - lo) / (grid_n - 1);
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - gr * (b - a);
    double d = a + gr * (b - a);
    while (b - a > 1e-14 * (1.0 + std::abs(x))) {
        if (cauchy_prox_objective(c, x, p, w) < cauchy_prox_objective(d, x, p, w))
            b = d;
        else
            a = c;
        c = b - gr * (b - a);
        d = a + gr * (b - a);
    }
    return 0.5 * (a + b);
}

SelfTestCheck check_prox_oracle(bool perturb) {
    SelfTestCheck check{"cauchy_prox_scalar oracle equivalence", false, ""};
    double worst_excess = 0.0;
    double worst_residual = 0.0;
    for (int k = 0; k < 1000; ++k) {
        const double x = 20.0 * rng::uniform(4242, 1, k) - 10.0;
        const CauchyParams p{std::pow(10.0, -4.0 + 3.0 * rng::uniform(4242, 2, k))};
        const ProxParams w{std::pow(10.0, -4.0 + 4.0 * rng::uniform(4242, 3, k))};
        double u = cauchy_prox_scalar(x, p, w);
        if (perturb) u += 1e-3;  // negative-control hook
        const double u_oracle = prox_oracle(x, p, w);
        worst_excess = std::max(worst_excess, cauchy_prox_objective(u, x, p, w) -
                                                  cauchy_prox_objective(u_oracle, x, p, w));
        const double b = p.gamma * p.gamma + 2.0 * w.omega;
        const double res = ((u - x) * u + b) * u - x * p.gamma * p.gamma;
        worst_residual =
            std::max(worst_residual, std::abs(res) / (1.0 + std::abs(x * x * x)));
    }
    check.passed = worst_excess <= 1e-9 && worst_residual <= 1e-8;
    check.detail = "worst objective excess " + format_double(worst_excess) +
                   ", worst cubic residual " + format_double(worst_residual) +
                   " over 1000 seeded triples";
    return check;
}

SelfTestCheck check_adjoint() {
    SelfTestCheck check{"radon_inverse adjoint dot test", false, ""};
    const RadonGrid grid = RadonGrid::for_image(32, 45);
    double worst = 0.0;
    for (std::uint64_t trial = 0; trial < 5; ++trial) {
        RadonImage x(grid);
        for (std::size_t k = 0; k < x.size(); ++k)
            x.values()[k] = rng::normal(trial, 11, k);
        Image y(32);
        for (std::size_t k = 0; k < y.size(); ++k)
            y.pixels()[k] = rng::normal(trial, 12, k);
        const Image cx = radon_inverse(x);
        const RadonImage cty = radon_inverse_adjoint(y, grid);
        const double lhs = dot(cx.pixels(), y.pixels());
        const double rhs = dot(x.values(), cty.values());
        worst = std::max(worst,
                         std::abs(lhs - rhs) / (frobenius_norm(x) * frobenius_norm(y)));
    }
    check.passed = worst <= 1e-10;
    check.detail = "worst normalized mismatch " + format_double(worst) + " at side 32";
    return check;
}

SelfTestCheck check_lipschitz() {
    SelfTestCheck check{"estimate_lipschitz dense cross-check", false, ""};
    const RadonGrid grid = RadonGrid::for_image(8, 16);
    const std::size_t n_radon = static_cast<std::size_t>(grid.n_r) * grid.n_theta;
    const std::size_t n_image = 64;

    // materialize the inverse operator column by column
    std::vector<double> dense(n_image * n_radon);
    for (std::size_t col = 0; col < n_radon; ++col) {
        RadonImage basis(grid);
        basis.values()[col] = 1.0;
        const Image out = radon_inverse(basis);
        for (std::size_t row = 0; row < n_image; ++row)
            dense[row * n_radon + col] = out.pixels()[row];
    }

    // dominant singular value of the dense matrix by an independent
    // Rayleigh iteration on C^T C (seed differs from the operator path)
    std::vector<double> v(n_radon);
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = rng::normal(99, 5, k);
    double lambda = 0.0;
    for (int it = 0; it < 3000; ++it) {
        std::vector<double> cv(n_image, 0.0);
        for (std::size_t r = 0; r < n_image; ++r)
            for (std::size_t c = 0; c < n_radon; ++c) cv[r] += dense[r * n_radon + c] * v[c];
        std::vector<double> w(n_radon, 0.0);
        for (std::size_t c = 0; c < n_radon; ++c)
            for (std::size_t r = 0; r < n_image; ++r) w[c] += dense[r * n_radon + c] * cv[r];
        const double nv = frobenius_norm(v);
        const double lambda_new = dot(v, w) / (nv * nv);
        const double nw = frobenius_norm(w);
        for (std::size_t k = 0; k < w.size(); ++k) w[k] /= nw;
        v = std::move(w);
        if (it > 2 && std::abs(lambda_new - lambda) < 1e-13 * lambda_new) {
            lambda = lambda_new;
            break;
        }
        lambda = lambda_new;
    }
    const double dense_L = 2.0 * lambda;

    const LipschitzEstimate est = estimate_lipschitz(grid, 8, 2000, 1e-10);
    const double rel = std::abs(est.value - dense_L) / dense_L;
    check.passed = est.converged && rel <= 0.01;
    check.detail = "operator L " + format_double(est.value) + " vs dense L " +
                   format_double(dense_L) + " (rel diff " + format_double(rel) + ")";
    return check;
}

SelfTestCheck check_radicand(std::string& table, bool perturb) {
    SelfTestCheck check{"cube-root radicand audit (q/2 vs p/2)", false, ""};
    const CauchyParams p{0.05};
    const ProxParams w{0.1};
    std::ostringstream t;
    t << "radicand audit: gamma=0.05 omega=0.1\n";
    t << "      x |     shipped (q/2) |    literal (p/2) |            oracle\n";
    bool shipped_ok = true;
    bool literal_breaks = false;
    for (const double x : {0.0, 0.5, -0.5, 1.0, 2.0, 5.0}) {
        double shipped = cauchy_prox_scalar(x, p, w);
        if (perturb) shipped += 1e-3;
        const double literal = cauchy_prox_scalar_p_radicand(x, p, w);
        const double oracle = prox_oracle(x, p, w);
        if (std::abs(shipped - oracle) > 1e-6) shipped_ok = false;
        if (x == 0.0 && literal != 0.0) literal_breaks = true;
        char line[128];
        std::snprintf(line, sizeof line, "%8.3f | %17.12f | %16.12f | %17.12f\n", x, shipped,
                      literal, oracle);
        t << line;
    }
    t << "literal variant at x=0 is nonzero: prox(0)=0 violated\n";
    table = t.str();
    check.passed = shipped_ok && literal_breaks;
    check.detail = shipped_ok ? "shipped formula matches the oracle; literal variant breaks "
                                "the zero fixed point"
                              : "shipped cauchy_prox_scalar deviates from the oracle";
    return check;
}

}  // namespace

SelfTestResult run_selftest(bool perturb_prox) {
    SelfTestResult result;
    result.checks.push_back(check_prox_oracle(perturb_prox));
    result.checks.push_back(check_adjoint());
    result.checks.push_back(check_lipschitz());
    result.checks.push_back(check_radicand(result.radicand_table, perturb_prox));
    result.all_passed = true;
    for (const SelfTestCheck& c : result.checks) result.all_passed = result.all_passed && c.passed;
    return result;
}

std::string render_selftest_text(const SelfTestResult& result) {
    std::ostringstream out;
    out << "# wakeradon selftest\n";
    for (const SelfTestCheck& c : result.checks)
        out << (c.passed ? "[PASS] " : "[FAIL] ") << c.name << ": " << c.detail << "\n";
    out << "\n" << result.radicand_table;
    out << "\nresult: " << (result.all_passed ? "all checks passed" : "CHECKS FAILED") << "\n";
    return out.str();
}

}  // namespace wakeradon
