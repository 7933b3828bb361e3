#include <doctest.h>

#include <cmath>

#include "test_helpers.hpp"
#include "wakeradon/cauchy_prior.hpp"

using namespace wakeradon;
using namespace wakeradon::testing;

namespace {

// Grid scan + golden-section refinement of the prox objective over
// [-|x|, |x|]. Independent of the closed-form implementation.
double prox_oracle(double x, const CauchyParams& p, const ProxParams& w, int grid_n = 20001) {
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

double cubic_residual(double u, double x, const CauchyParams& p, const ProxParams& w) {
    const double b = p.gamma * p.gamma + 2.0 * w.omega;
    return ((u - x) * u + b) * u - x * p.gamma * p.gamma;
}

}  // namespace

TEST_CASE("cauchy_neg_log_prior values and symmetry") {
    CHECK(cauchy_neg_log_prior(0.0, {0.1}) == doctest::Approx(std::log(0.1)).epsilon(1e-12));
    // at x = gamma the value collapses to log(2 gamma)
    CHECK(cauchy_neg_log_prior(0.05, {0.05}) ==
          doctest::Approx(std::log(0.1)).epsilon(1e-12));
    for (int k = 0; k < 50; ++k) {
        const double x = 20.0 * rng::uniform(9, 1, k) - 10.0;
        CHECK(cauchy_neg_log_prior(x, {0.03}) == cauchy_neg_log_prior(-x, {0.03}));
    }
    // minimized at zero
    CHECK(cauchy_neg_log_prior(0.0, {0.02}) < cauchy_neg_log_prior(0.01, {0.02}));
    CHECK_THROWS_AS(cauchy_neg_log_prior(1.0, {0.0}), ConfigurationError);
}

TEST_CASE("cauchy_prox_scalar: fixed point at zero") {
    for (const double gamma : {1e-4, 0.01, 0.1})
        for (const double omega : {1e-3, 0.25, 1.0})
            CHECK(cauchy_prox_scalar(0.0, {gamma}, {omega}) == 0.0);
}

TEST_CASE("cauchy_prox_scalar: frozen oracle values") {
    // values computed once with the grid+golden oracle
    CHECK(cauchy_prox_scalar(1.0, {0.05}, {0.1}) ==
          doctest::Approx(0.0131939988).epsilon(1e-6));
    // flat prior regime: prox approaches the identity
    CHECK(cauchy_prox_scalar(2.0, {1000.0}, {0.1}) == doctest::Approx(2.0).epsilon(1e-3));
    // fresh oracle agreement on the same point
    const double u = cauchy_prox_scalar(1.0, {0.05}, {0.1});
    CHECK(std::abs(u - prox_oracle(1.0, {0.05}, {0.1})) <= 1e-6);
}

TEST_CASE("cauchy_prox_scalar: oracle equivalence over 1000 random triples") {
    double worst_excess = 0.0;
    double worst_residual = 0.0;
    for (int k = 0; k < 1000; ++k) {
        const double x = 20.0 * rng::uniform(77, 1, k) - 10.0;
        const CauchyParams p{std::pow(10.0, -4.0 + 3.0 * rng::uniform(77, 2, k))};
        const ProxParams w{std::pow(10.0, -4.0 + 4.0 * rng::uniform(77, 3, k))};
        const double u = cauchy_prox_scalar(x, p, w);
        const double u_oracle = prox_oracle(x, p, w, 4001);
        worst_excess = std::max(worst_excess, cauchy_prox_objective(u, x, p, w) -
                                                  cauchy_prox_objective(u_oracle, x, p, w));
        worst_residual =
            std::max(worst_residual,
                     std::abs(cubic_residual(u, x, p, w)) / (1.0 + std::abs(x * x * x)));
    }
    CHECK(worst_excess <= 1e-9);
    CHECK(worst_residual <= 1e-8);
}

TEST_CASE("cauchy_prox_scalar: shrinkage and exact odd symmetry") {
    for (int k = 0; k < 300; ++k) {
        const double x = 20.0 * rng::uniform(5, 1, k) - 10.0;
        if (std::abs(x) < 1e-6) continue;
        const CauchyParams p{std::pow(10.0, -4.0 + 3.0 * rng::uniform(5, 2, k))};
        const ProxParams w{std::pow(10.0, -4.0 + 4.0 * rng::uniform(5, 3, k))};
        const double u = cauchy_prox_scalar(x, p, w);
        if (x > 0.0) {
            CHECK(u > 0.0);
            CHECK(u < x);
        } else {
            CHECK(u < 0.0);
            CHECK(u > x);
        }
        CHECK(cauchy_prox_scalar(-x, p, w) == -u);  // bit-exact
    }
}

TEST_CASE("cauchy_prox_scalar: monotone in the single-root regime") {
    // gamma^2 >= omega keeps the discriminant positive for every x
    const CauchyParams p{0.1};
    const ProxParams w{0.005};
    cauchy_prox_reset_multiple_root_count();
    double prev = cauchy_prox_scalar(-10.0, p, w);
    for (int k = 1; k <= 4000; ++k) {
        const double x = -10.0 + 20.0 * k / 4000.0;
        const double u = cauchy_prox_scalar(x, p, w);
        CHECK(u >= prev);
        prev = u;
    }
    CHECK(cauchy_prox_multiple_root_count() == 0);
}

TEST_CASE("cauchy_prox_scalar: non-convex regime is flagged") {
    cauchy_prox_reset_multiple_root_count();
    (void)cauchy_prox_scalar(1.0, {0.05}, {0.1});  // three real roots here
    CHECK(cauchy_prox_multiple_root_count() == 1);
}

TEST_CASE("cauchy_prox_scalar: parameter and domain errors") {
    CHECK_THROWS_AS(cauchy_prox_scalar(1.0, {-0.1}, {0.1}), ConfigurationError);
    CHECK_THROWS_AS(cauchy_prox_scalar(1.0, {0.1}, {0.0}), ConfigurationError);
    CHECK_THROWS_AS(cauchy_prox_scalar(std::nan(""), {0.1}, {0.1}), ConfigurationError);
}

TEST_CASE("p-radicand variant violates the zero fixed point") {
    CHECK(cauchy_prox_scalar_p_radicand(0.0, {0.05}, {0.1}) != 0.0);
}

TEST_CASE("cauchy_prox_field: separability, zeros, odd symmetry") {
    const RadonGrid grid = RadonGrid::for_image(16, 18);
    const CauchyParams p{0.02};
    const ProxParams w{0.3};

    const RadonImage zeros = cauchy_prox_field(RadonImage(grid), p, w);
    for (double v : zeros.values()) CHECK(v == 0.0);

    RadonImage field = random_radon(grid, 11);
    for (double& v : field.values()) v *= 3.0;
    const RadonImage out = cauchy_prox_field(field, p, w);
    RadonImage neg(grid);
    for (std::size_t k = 0; k < field.size(); ++k) neg.values()[k] = -field.values()[k];
    const RadonImage out_neg = cauchy_prox_field(neg, p, w);

    for (std::size_t k = 0; k < field.size(); ++k) {
        CHECK(out.values()[k] == cauchy_prox_scalar(field.values()[k], p, w));
        CHECK(out_neg.values()[k] == -out.values()[k]);
    }
}
