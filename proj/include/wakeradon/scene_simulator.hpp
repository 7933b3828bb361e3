#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "wakeradon/types.hpp"

namespace wakeradon {

enum class WakeKind { kTurbulent, kNarrowV, kKelvin };

/// Line parameters of one rendered wake, in the Radon convention: the wake
/// lies on x cos(theta) + y sin(theta) = r, drawn as a half-line from the
/// scene center along direction half_sign * (-sin theta, cos theta).
struct WakeBandSpec {
    WakeKind kind = WakeKind::kTurbulent;
    double theta_deg = 0.0;   ///< for arms: resolved from turbulent + delta
    double offset_r = 0.0;    ///< perpendicular offset in pixels
    double width = 2.0;       ///< band width in pixels
    double contrast = 0.0;    ///< additive; negative = dark, positive = bright
    int half_sign = +1;
};

struct TurbulentSpec {
    double theta_deg = 30.0;
    double offset_r = 0.0;
    double width = 2.0;
    double contrast = -0.4;
    int half_sign = +1;
};

struct ArmSpec {
    WakeKind kind = WakeKind::kNarrowV;
    int side = +1;               ///< theta side relative to the turbulent wake
    double delta_theta_deg = 3.0;
    double width = 2.0;
    double contrast = 0.5;
    int half_sign = +1;
};

enum class NoiseModel { kNone, kGaussian, kGammaSpeckle };

struct NoiseSpec {
    NoiseModel model = NoiseModel::kGaussian;
    double sigma_or_looks = 0.1;  ///< gaussian sigma, or integer speckle looks
};

struct SceneSpec {
    int side = 128;
    double background_mean = 1.0;
    std::optional<TurbulentSpec> turbulent = TurbulentSpec{};
    std::vector<ArmSpec> arms;
    NoiseSpec noise;
    std::uint64_t seed = 0;

    void validate() const;
};

/// One rendered wake with its true line parameters.
struct TrueWake {
    WakeKind kind = WakeKind::kTurbulent;
    double r = 0.0;
    double theta_deg = 0.0;
    int half_sign = +1;
};

/// Slot layout follows the detection report: turbulent, two narrow-V, two
/// Kelvin. visibility[k] is true iff that slot was rendered.
struct GroundTruth {
    std::array<bool, 5> visibility{};
    std::vector<TrueWake> wakes;
};

/// Renders background + anti-aliased additive wake bands + noise.
/// Deterministic per seed.
std::pair<Image, GroundTruth> render_scene(const SceneSpec& spec);

/// Six-scene visibility suite, one batch per seed. Per seed the visibility
/// rows are (in slot order turbulent, narrow1, narrow2, kelvin1, kelvin2):
/// four scenes with {turbulent, narrow1} and two with
/// {turbulent, narrow1, kelvin1} -- 14 visible slots out of 30.
std::vector<std::pair<Image, GroundTruth>> table1_suite(double noise_level,
                                                        std::span<const std::uint64_t> seeds);

}  // namespace wakeradon
