#include <doctest.h>

#include <cmath>

#include "test_helpers.hpp"
#include "wakeradon/geometry_transforms.hpp"
#include "wakeradon/scene_simulator.hpp"

using namespace wakeradon;
using namespace wakeradon::testing;

namespace {

struct Extremum {
    int r_bin;
    int theta_bin;
};

Extremum local_extremum_near(const RadonImage& x, double r_true, double theta_true_deg,
                             bool maximum, int r_window = 6, double theta_window_deg = 3.0) {
    const RadonGrid& g = x.grid();
    const int i0 = g.nearest_r_bin(r_true);
    const int j0 = g.nearest_theta_bin(theta_true_deg);
    const int jw = static_cast<int>(std::ceil(theta_window_deg / g.theta_spacing_deg()));
    Extremum best{i0, j0};
    double best_v = x.at(i0, j0);
    for (int i = std::max(0, i0 - r_window); i <= std::min(g.n_r - 1, i0 + r_window); ++i)
        for (int dj = -jw; dj <= jw; ++dj) {
            const int j = (j0 + dj + g.n_theta) % g.n_theta;
            const double v = x.at(i, j);
            if (maximum ? v > best_v : v < best_v) {
                best_v = v;
                best = {i, j};
            }
        }
    return best;
}

}  // namespace

TEST_CASE("render_scene: no wakes, no noise gives a constant image") {
    SceneSpec spec;
    spec.side = 32;
    spec.background_mean = 1.5;
    spec.turbulent.reset();
    spec.noise = {NoiseModel::kNone, 0.0};
    const auto [img, truth] = render_scene(spec);
    for (double v : img.pixels()) CHECK(v == 1.5);
    for (bool vis : truth.visibility) CHECK(!vis);
    CHECK(truth.wakes.empty());
}

TEST_CASE("render_scene: noiseless turbulent wake is localized by the forward transform") {
    SceneSpec spec;
    spec.side = 128;
    spec.turbulent = TurbulentSpec{30.0, 0.0, 2.0, -0.4, +1};
    spec.noise = {NoiseModel::kNone, 0.0};
    const auto [img, truth] = render_scene(spec);
    CHECK(truth.visibility[0]);
    REQUIRE(truth.wakes.size() == 1);

    const RadonGrid grid = RadonGrid::for_image(spec.side, 180);
    const RadonImage x = radon_forward(standardize(img), grid);

    int bi = 0, bj = 0;
    double best = x.at(0, 0);
    for (int i = 0; i < grid.n_r; ++i)
        for (int j = 0; j < grid.n_theta; ++j)
            if (x.at(i, j) < best) {
                best = x.at(i, j);
                bi = i;
                bj = j;
            }
    CHECK(std::abs(grid.r_of(bi) - truth.wakes[0].r) <= grid.r_spacing() + 1e-9);
    CHECK(std::abs(grid.theta_of_deg(bj) - truth.wakes[0].theta_deg) <=
          grid.theta_spacing_deg() + 1e-9);
}

TEST_CASE("render_scene: every rendered wake round-trips through the transform") {
    SceneSpec spec;
    spec.side = 128;
    spec.turbulent = TurbulentSpec{55.0, 0.0, 2.0, -0.4, +1};
    spec.arms.push_back(ArmSpec{WakeKind::kNarrowV, +1, 3.0, 2.0, 0.5, +1});
    spec.arms.push_back(ArmSpec{WakeKind::kKelvin, -1, 19.5, 2.0, 0.5, +1});
    spec.noise = {NoiseModel::kNone, 0.0};
    const auto [img, truth] = render_scene(spec);
    REQUIRE(truth.wakes.size() == 3);

    const RadonGrid grid = RadonGrid::for_image(spec.side, 180);
    const RadonImage x = radon_forward(standardize(img), grid);
    for (const TrueWake& wake : truth.wakes) {
        const bool maximum = wake.kind != WakeKind::kTurbulent;
        const Extremum e = local_extremum_near(x, wake.r, wake.theta_deg, maximum);
        CHECK(std::abs(grid.r_of(e.r_bin) - wake.r) <= grid.r_spacing() + 1e-9);
        CHECK(std::abs(grid.theta_of_deg(e.theta_bin) - wake.theta_deg) <=
              grid.theta_spacing_deg() + 1e-9);
    }
}

TEST_CASE("render_scene: gaussian noise statistics") {
    SceneSpec spec;
    spec.side = 128;
    spec.background_mean = 1.0;
    spec.turbulent.reset();
    spec.noise = {NoiseModel::kGaussian, 0.1};
    spec.seed = 11;
    const auto [img, truth] = render_scene(spec);

    const MeanStd ms = mean_std(img.pixels());
    CHECK(std::abs(ms.mean - 1.0) <= 3.0 * 0.1 / 128.0);
    const double var = ms.std * ms.std;
    CHECK(std::abs(var - 0.01) / 0.01 <= 0.05);
}

TEST_CASE("render_scene: gamma speckle keeps the mean") {
    SceneSpec spec;
    spec.side = 128;  // > 1e4 pixels
    spec.background_mean = 2.0;
    spec.turbulent.reset();
    spec.noise = {NoiseModel::kGammaSpeckle, 4.0};
    spec.seed = 12;
    const auto [img, truth] = render_scene(spec);
    const MeanStd ms = mean_std(img.pixels());
    CHECK(std::abs(ms.mean - 2.0) / 2.0 <= 0.02);
}

TEST_CASE("render_scene: seed contract") {
    SceneSpec spec;
    spec.side = 64;
    spec.noise = {NoiseModel::kGaussian, 0.2};
    spec.seed = 5;
    const auto [a, ta] = render_scene(spec);
    const auto [b, tb] = render_scene(spec);
    CHECK(a.pixels() == b.pixels());

    spec.seed = 6;
    const auto [c, tc] = render_scene(spec);
    CHECK(a.pixels() != c.pixels());
    CHECK(ta.visibility == tc.visibility);
}

TEST_CASE("render_scene: specification errors") {
    SceneSpec spec;
    spec.side = 64;
    spec.turbulent = TurbulentSpec{30.0, 0.0, 2.0, +0.4, +1};  // bright turbulent
    CHECK_THROWS_AS(render_scene(spec), ConfigurationError);

    spec.turbulent = TurbulentSpec{30.0, 500.0, 2.0, -0.4, +1};  // outside the image
    CHECK_THROWS_AS(render_scene(spec), ConfigurationError);

    spec.turbulent = TurbulentSpec{};
    spec.arms.push_back(ArmSpec{WakeKind::kNarrowV, +1, 9.0, 2.0, 0.5, +1});  // > 4 degrees
    CHECK_THROWS_AS(render_scene(spec), ConfigurationError);
}

TEST_CASE("table1_suite: visibility schema") {
    const std::uint64_t seeds[2] = {1, 2};
    const auto suite = table1_suite(0.1, seeds);
    REQUIRE(suite.size() == 12);

    const int expected_row_sums[6] = {2, 2, 3, 3, 2, 2};
    int visible = 0;
    for (int k = 0; k < 6; ++k) {
        int row = 0;
        for (bool v : suite[k].second.visibility) row += v ? 1 : 0;
        CHECK(row == expected_row_sums[k]);
        visible += row;
        CHECK(suite[k].second.visibility[0]);  // turbulent always visible
        CHECK(suite[k].second.visibility[1]);  // first narrow arm always visible
        CHECK(!suite[k].second.visibility[2]);
        CHECK(!suite[k].second.visibility[4]);
    }
    CHECK(visible == 14);  // of 30 slots per seed

    // same rows, different pixels across seeds
    for (int k = 0; k < 6; ++k) {
        CHECK(suite[k].second.visibility == suite[k + 6].second.visibility);
        CHECK(suite[k].first.pixels() != suite[k + 6].first.pixels());
    }
}
