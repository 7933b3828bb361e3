#include "wakeradon/scene_simulator.hpp"

#include <algorithm>
#include <cmath>

#include "wakeradon/rng.hpp"

namespace wakeradon {
namespace {

constexpr double kNarrowVMaxDeg = 4.0;
constexpr double kKelvinAngleDeg = 19.5;

double clamp01(double v) { return v < 0.0 ? 0.0 : (v > 1.0 ? 1.0 : v); }

// Adds one anti-aliased half-band. Perpendicular coverage is the overlap of
// a unit pixel with the band; the half-line cut fades over one pixel at the
// scene center.
void render_band(Image& img, const WakeBandSpec& band) {
    const int side = img.side();
    const double center = 0.5 * (side - 1);
    const double th = deg_to_rad(band.theta_deg);
    const double ct = std::cos(th);
    const double st = std::sin(th);
    bool touched = false;
    for (int row = 0; row < side; ++row) {
        const double y = row - center;
        for (int col = 0; col < side; ++col) {
            const double x = col - center;
            const double dist = x * ct + y * st - band.offset_r;
            const double along = band.half_sign * (-x * st + y * ct);
            const double cov_perp = clamp01(0.5 * band.width - std::abs(dist) + 0.5);
            const double cov_along = clamp01(along + 0.5);
            const double cov = cov_perp * cov_along;
            if (cov > 0.0) {
                img.at(row, col) += band.contrast * cov;
                touched = true;
            }
        }
    }
    if (!touched)
        throw ConfigurationError("render_scene: wake band lies entirely outside the image");
}

}  // namespace

void SceneSpec::validate() const {
    if (side < 8) throw ConfigurationError("SceneSpec: side must be at least 8");
    if (turbulent) {
        if (turbulent->width <= 0.0) throw ConfigurationError("SceneSpec: turbulent width <= 0");
        if (turbulent->contrast >= 0.0)
            throw ConfigurationError("SceneSpec: turbulent contrast must be negative (dark)");
    }
    for (const ArmSpec& arm : arms) {
        if (arm.kind == WakeKind::kTurbulent)
            throw ConfigurationError("SceneSpec: arms cannot be turbulent");
        if (!turbulent) throw ConfigurationError("SceneSpec: arms require a turbulent wake");
        if (arm.width <= 0.0) throw ConfigurationError("SceneSpec: arm width <= 0");
        if (arm.contrast <= 0.0)
            throw ConfigurationError("SceneSpec: arm contrast must be positive (bright)");
        if (arm.side != +1 && arm.side != -1)
            throw ConfigurationError("SceneSpec: arm side must be +1 or -1");
        if (arm.kind == WakeKind::kNarrowV && std::abs(arm.delta_theta_deg) > kNarrowVMaxDeg)
            throw ConfigurationError("SceneSpec: narrow-V arm exceeds the 4 degree separation");
    }
    if (noise.model == NoiseModel::kGaussian && noise.sigma_or_looks < 0.0)
        throw ConfigurationError("SceneSpec: gaussian sigma must be >= 0");
    if (noise.model == NoiseModel::kGammaSpeckle && noise.sigma_or_looks < 1.0)
        throw ConfigurationError("SceneSpec: speckle looks must be >= 1");
}

std::pair<Image, GroundTruth> render_scene(const SceneSpec& spec) {
    spec.validate();
    Image img(spec.side, spec.background_mean);
    GroundTruth truth;

    int narrow_slot = 1;
    int kelvin_slot = 3;
    if (spec.turbulent) {
        const TurbulentSpec& t = *spec.turbulent;
        render_band(img, WakeBandSpec{WakeKind::kTurbulent, t.theta_deg, t.offset_r, t.width,
                                      t.contrast, t.half_sign});
        truth.visibility[0] = true;
        truth.wakes.push_back({WakeKind::kTurbulent, t.offset_r, t.theta_deg, t.half_sign});

        for (const ArmSpec& arm : spec.arms) {
            const double nominal =
                arm.kind == WakeKind::kNarrowV ? arm.delta_theta_deg : kKelvinAngleDeg;
            const double theta = t.theta_deg + arm.side * std::abs(nominal);
            render_band(img, WakeBandSpec{arm.kind, theta, t.offset_r, arm.width, arm.contrast,
                                          arm.half_sign});
            const int slot = arm.kind == WakeKind::kNarrowV ? narrow_slot++ : kelvin_slot++;
            if (slot > 4 || (arm.kind == WakeKind::kNarrowV && slot > 2))
                throw ConfigurationError("SceneSpec: more arms than report slots");
            truth.visibility[static_cast<std::size_t>(slot)] = true;
            truth.wakes.push_back({arm.kind, t.offset_r, theta, arm.half_sign});
        }
    } else if (!spec.arms.empty()) {
        throw ConfigurationError("SceneSpec: arms require a turbulent wake");
    }

    if (spec.noise.model == NoiseModel::kGaussian && spec.noise.sigma_or_looks > 0.0) {
        const double sigma = spec.noise.sigma_or_looks;
        for (std::size_t k = 0; k < img.size(); ++k)
            img.pixels()[k] += sigma * rng::normal(spec.seed, /*stream=*/1, k);
    } else if (spec.noise.model == NoiseModel::kGammaSpeckle) {
        const int looks = static_cast<int>(std::lround(spec.noise.sigma_or_looks));
        for (std::size_t k = 0; k < img.size(); ++k)
            img.pixels()[k] *= rng::gamma_unit_mean(spec.seed, /*stream=*/2, k, looks);
    }
    return {std::move(img), std::move(truth)};
}

std::vector<std::pair<Image, GroundTruth>> table1_suite(double noise_level,
                                                        std::span<const std::uint64_t> seeds) {
    if (seeds.empty()) throw ConfigurationError("table1_suite: seeds must be non-empty");

    // Six scenes: turbulent angles vary, four carry {turbulent, narrow1},
    // two carry {turbulent, narrow1, kelvin1}. Angles stay clear of the
    // [0, 180) boundary so the Kelvin window never wraps.
    struct Row {
        double theta_deg;
        bool kelvin;
    };
    const Row rows[6] = {{30.0, false}, {75.0, false}, {55.0, true},
                         {120.0, true}, {95.0, false}, {150.0, false}};

    std::vector<std::pair<Image, GroundTruth>> out;
    out.reserve(6 * seeds.size());
    for (std::size_t s = 0; s < seeds.size(); ++s) {
        for (int i = 0; i < 6; ++i) {
            SceneSpec spec;
            spec.side = 128;
            spec.background_mean = 1.0;
            spec.turbulent = TurbulentSpec{rows[i].theta_deg, 0.0, 2.0, -0.4, +1};
            spec.arms.push_back(ArmSpec{WakeKind::kNarrowV, +1, 3.0, 2.0, 0.5, +1});
            if (rows[i].kelvin)
                spec.arms.push_back(ArmSpec{WakeKind::kKelvin, -1, kKelvinAngleDeg, 2.0, 0.5, +1});
            spec.noise = NoiseSpec{NoiseModel::kGaussian, noise_level};
            spec.seed = rng::mix(seeds[s], 7777, static_cast<std::uint64_t>(i));
            out.push_back(render_scene(spec));
        }
    }
    return out;
}

}  // namespace wakeradon
