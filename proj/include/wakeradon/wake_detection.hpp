#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wakeradon/myula_solver.hpp"
#include "wakeradon/scene_simulator.hpp"
#include "wakeradon/types.hpp"

namespace wakeradon {

/// Ship disc mask. Center in pixel coordinates (col, row); negative center
/// components mean "image center", radius 0 means side/20.
struct ShipMaskSpec {
    double center_col = -1.0;
    double center_row = -1.0;
    double radius = 0.0;
};

ShipMaskSpec resolve_mask(const ShipMaskSpec& spec, int side);

/// Replaces pixels inside the disc by the mean of the pixels outside it.
Image mask_ship(const Image& img, const ShipMaskSpec& spec);

/// Admissible (r, theta) bins for the wake search.
struct RegionMask {
    RadonGrid grid;
    std::vector<std::uint8_t> admissible;

    bool at(int i, int j) const {
        return admissible[static_cast<std::size_t>(i) * grid.n_theta + j] != 0;
    }
    int count() const;
};

/// Bins between the two sinusoids r = x cos(theta) + y sin(theta) +/- delta_r
/// traced by a ship at centered coordinates (x, y). For a centered ship this
/// degenerates to |r| <= delta_r.
RegionMask search_region(const RadonGrid& grid, double ship_x, double ship_y, double delta_r);

struct WakeCandidate {
    WakeKind kind = WakeKind::kTurbulent;
    int r_bin = 0;
    int theta_bin = 0;
    double r = 0.0;
    double theta_deg = 0.0;
    int half_sign = +1;
    double fi = 0.0;
    bool confirmed = false;
    double peak_value = 0.0;
};

/// Confirmation rule sets for the intensity index. The corrected rules treat
/// the turbulent wake as dark (index <= 0) and the arms as bright
/// (index >= margin); the literal set applies the swapped inequalities and
/// exists so the swap can be audited from the command line.
enum class FiRuleSet { kCorrected, kPaperLiteral };

struct DetectionConfig {
    ShipMaskSpec mask;
    double search_delta_r = 0.0;  ///< 0 = mask radius + 2 pixels
    double narrow_v_max_deg = 4.0;
    double kelvin_angle_deg = 19.5;
    double kelvin_tol_deg = 2.0;
    double fi_margin = 0.1;
    /// Margin on the dark side: turbulent confirmed iff F_I <= -margin.
    /// Zero reduces to a pure sign test, which on wake-free noise scenes
    /// confirms the selected minimum line almost surely.
    double fi_margin_turbulent = 0.1;
    double arm_floor_sigmas = 3.0;  ///< robust z-score floor for arm peaks
    FiRuleSet rules = FiRuleSet::kCorrected;
    SolverConfig solver;
};

/// Candidate at the global minimum of the estimate within the region
/// (dark lines are negative after standardization). Ties break toward the
/// smallest theta bin, then the smallest r bin.
WakeCandidate detect_turbulent(const RadonImage& rest, const RegionMask& region);

/// Bright-line candidates around the turbulent angle: narrow-V arms within
/// narrow_v_max_deg, Kelvin arms within kelvin_angle_deg +/- kelvin_tol_deg.
/// At most one candidate per theta side; a peak must clear a robust
/// (median + k MAD) floor over the region. Around an accepted peak a
/// +/-1 degree x +/-2 r-bin neighborhood is suppressed before the second
/// side is searched.
std::vector<WakeCandidate> detect_arms(const RadonImage& rest, const RegionMask& region,
                                       const WakeCandidate& turbulent, WakeKind kind,
                                       const DetectionConfig& cfg);

/// Intensity index of a half-line: mean image intensity over the unit-step
/// nearest-pixel traversal from the ship center outward, divided by the
/// whole-image mean, minus one.
///
/// Throws GeometryError when fewer than 5 pixels are hit and DetectionError
/// when the image mean is zero.
double compute_fi(const Image& img, double r, double theta_deg, int half_sign,
                  double ship_col, double ship_row);
double compute_fi(const Image& img, const WakeCandidate& cand, int half_sign,
                  const ShipMaskSpec& resolved_mask);

struct WakeSlot {
    std::optional<WakeCandidate> candidate;
    bool detected = false;
};

struct WakeReport {
    /// Order: turbulent, narrow_v_1, narrow_v_2, kelvin_1, kelvin_2.
    std::array<WakeSlot, 5> slots;
    bool turbulent_dependency_unconfirmed = false;
    SolverDiagnostics solver;
    std::vector<std::string> stage_errors;
};

const char* slot_name(int slot);
const char* wake_kind_name(WakeKind kind);

/// Applies the intensity-index rules: per candidate both half-lines are
/// scored and the half with the stronger correctly-signed index is kept.
WakeReport confirm_candidates(const Image& img, const std::vector<WakeCandidate>& candidates,
                              const DetectionConfig& cfg);

/// Full pipeline: mask -> MYULA inversion of the standardized image ->
/// region-restricted peak search -> angular association -> confirmation.
WakeReport detect_wakes(const Image& img, const DetectionConfig& cfg);

}  // namespace wakeradon
