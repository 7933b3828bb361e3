#include "wakeradon/wake_detection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace wakeradon {
namespace {

struct RobustStats {
    double median = 0.0;
    double mad_sigma = 0.0;  // 1.4826 * MAD
};

RobustStats region_stats(const RadonImage& rest, const RegionMask& region) {
    std::vector<double> vals;
    vals.reserve(rest.size());
    for (int i = 0; i < region.grid.n_r; ++i)
        for (int j = 0; j < region.grid.n_theta; ++j)
            if (region.at(i, j)) vals.push_back(rest.at(i, j));
    if (vals.empty()) throw DetectionError("region is empty");

    auto median_of = [](std::vector<double>& v) {
        const std::size_t mid = v.size() / 2;
        std::nth_element(v.begin(), v.begin() + mid, v.end());
        return v[mid];
    };
    RobustStats st;
    st.median = median_of(vals);
    for (double& v : vals) v = std::abs(v - st.median);
    st.mad_sigma = 1.4826 * median_of(vals);
    return st;
}

bool better_max(double v, int i, int j, double best, int bi, int bj) {
    if (v != best) return v > best;
    if (j != bj) return j < bj;
    return i < bi;
}

bool better_min(double v, int i, int j, double best, int bi, int bj) {
    if (v != best) return v < best;
    if (j != bj) return j < bj;
    return i < bi;
}

}  // namespace

ShipMaskSpec resolve_mask(const ShipMaskSpec& spec, int side) {
    ShipMaskSpec r = spec;
    const double center = 0.5 * (side - 1);
    if (r.center_col < 0.0) r.center_col = center;
    if (r.center_row < 0.0) r.center_row = center;
    if (r.radius <= 0.0) r.radius = side / 20.0;
    if (r.radius >= side / 2.0)
        throw ConfigurationError("mask_ship: radius must be smaller than half the image side");
    if (r.center_col >= side || r.center_row >= side)
        throw ConfigurationError("mask_ship: center lies outside the image");
    return r;
}

Image mask_ship(const Image& img, const ShipMaskSpec& spec) {
    const ShipMaskSpec m = resolve_mask(spec, img.side());
    const double r2 = m.radius * m.radius;

    double outside_sum = 0.0;
    std::size_t outside_count = 0;
    for (int row = 0; row < img.side(); ++row) {
        for (int col = 0; col < img.side(); ++col) {
            const double dx = col - m.center_col;
            const double dy = row - m.center_row;
            if (dx * dx + dy * dy > r2) {
                outside_sum += img.at(row, col);
                ++outside_count;
            }
        }
    }
    if (outside_count == 0)
        throw ConfigurationError("mask_ship: mask covers the whole image");
    const double fill = outside_sum / static_cast<double>(outside_count);

    Image out = img;
    for (int row = 0; row < img.side(); ++row) {
        for (int col = 0; col < img.side(); ++col) {
            const double dx = col - m.center_col;
            const double dy = row - m.center_row;
            if (dx * dx + dy * dy <= r2) out.at(row, col) = fill;
        }
    }
    return out;
}

int RegionMask::count() const {
    int n = 0;
    for (std::uint8_t v : admissible) n += v != 0;
    return n;
}

RegionMask search_region(const RadonGrid& grid, double ship_x, double ship_y, double delta_r) {
    grid.validate();
    if (!(delta_r > 0.0)) throw ConfigurationError("search_region: delta_r must be positive");
    RegionMask region{grid, std::vector<std::uint8_t>(
                                static_cast<std::size_t>(grid.n_r) * grid.n_theta, 0)};
    for (int j = 0; j < grid.n_theta; ++j) {
        const double th = grid.theta_of_rad(j);
        const double r_ship = ship_x * std::cos(th) + ship_y * std::sin(th);
        for (int i = 0; i < grid.n_r; ++i) {
            if (std::abs(grid.r_of(i) - r_ship) <= delta_r)
                region.admissible[static_cast<std::size_t>(i) * grid.n_theta + j] = 1;
        }
    }
    return region;
}

WakeCandidate detect_turbulent(const RadonImage& rest, const RegionMask& region) {
    if (!(rest.grid() == region.grid))
        throw DimensionError("detect_turbulent: region grid does not match the estimate");
    bool found = false;
    double best = 0.0;
    int bi = 0, bj = 0;
    for (int j = 0; j < region.grid.n_theta; ++j) {
        for (int i = 0; i < region.grid.n_r; ++i) {
            if (!region.at(i, j)) continue;
            const double v = rest.at(i, j);
            if (!found || better_min(v, i, j, best, bi, bj)) {
                found = true;
                best = v;
                bi = i;
                bj = j;
            }
        }
    }
    if (!found) throw DetectionError("detect_turbulent: search region is empty");

    WakeCandidate cand;
    cand.kind = WakeKind::kTurbulent;
    cand.r_bin = bi;
    cand.theta_bin = bj;
    cand.r = region.grid.r_of(bi);
    cand.theta_deg = region.grid.theta_of_deg(bj);
    cand.peak_value = best;
    return cand;
}

std::vector<WakeCandidate> detect_arms(const RadonImage& rest, const RegionMask& region,
                                       const WakeCandidate& turbulent, WakeKind kind,
                                       const DetectionConfig& cfg) {
    if (kind == WakeKind::kTurbulent)
        throw ConfigurationError("detect_arms: kind must be narrow-V or Kelvin");
    if (!(rest.grid() == region.grid))
        throw DimensionError("detect_arms: region grid does not match the estimate");

    const RadonGrid& grid = region.grid;
    const RobustStats stats = region_stats(rest, region);
    const double floor = stats.median + cfg.arm_floor_sigmas * stats.mad_sigma;

    const double lo = kind == WakeKind::kNarrowV ? 0.0
                                                 : cfg.kelvin_angle_deg - cfg.kelvin_tol_deg;
    const double hi = kind == WakeKind::kNarrowV ? cfg.narrow_v_max_deg
                                                 : cfg.kelvin_angle_deg + cfg.kelvin_tol_deg;

    // suppression neighborhood around an accepted peak
    const int sup_theta = std::max(1, static_cast<int>(std::ceil(1.0 / grid.theta_spacing_deg())));
    const int sup_r = 2;

    std::vector<WakeCandidate> out;
    int first_bi = -1, first_bj = -1;
    for (const int side : {+1, -1}) {
        bool found = false;
        double best = 0.0;
        int bi = 0, bj = 0;
        for (int j = 0; j < grid.n_theta; ++j) {
            const double dtheta = grid.theta_of_deg(j) - turbulent.theta_deg;
            if (side > 0 ? !(dtheta > 0.0) : !(dtheta < 0.0)) continue;
            const double mag = std::abs(dtheta);
            if (mag < lo || mag > hi) continue;
            for (int i = 0; i < grid.n_r; ++i) {
                if (!region.at(i, j)) continue;
                if (first_bj >= 0 && std::abs(j - first_bj) <= sup_theta &&
                    std::abs(i - first_bi) <= sup_r)
                    continue;
                const double v = rest.at(i, j);
                if (v <= floor) continue;
                if (!found || better_max(v, i, j, best, bi, bj)) {
                    found = true;
                    best = v;
                    bi = i;
                    bj = j;
                }
            }
        }
        if (found) {
            WakeCandidate cand;
            cand.kind = kind;
            cand.r_bin = bi;
            cand.theta_bin = bj;
            cand.r = grid.r_of(bi);
            cand.theta_deg = grid.theta_of_deg(bj);
            cand.peak_value = best;
            out.push_back(cand);
            if (first_bj < 0) {
                first_bi = bi;
                first_bj = bj;
            }
        }
    }
    return out;
}

double compute_fi(const Image& img, double r, double theta_deg, int half_sign,
                  double ship_col, double ship_row) {
    if (half_sign != +1 && half_sign != -1)
        throw ConfigurationError("compute_fi: half_sign must be +1 or -1");
    const int side = img.side();
    const double center = 0.5 * (side - 1);
    const double th = deg_to_rad(theta_deg);
    const double ct = std::cos(th);
    const double st = std::sin(th);

    // foot of the ship position on the candidate line, centered coordinates
    const double sx = ship_col - center;
    const double sy = ship_row - center;
    const double slack = r - (sx * ct + sy * st);
    const double fx = sx + slack * ct;
    const double fy = sy + slack * st;
    const double dx = -half_sign * st;
    const double dy = half_sign * ct;

    double sum = 0.0;
    int count = 0;
    for (int k = 0;; ++k) {
        const int col = static_cast<int>(std::lround(fx + k * dx + center));
        const int row = static_cast<int>(std::lround(fy + k * dy + center));
        if (col < 0 || col >= side || row < 0 || row >= side) break;
        sum += img.at(row, col);
        ++count;
    }
    if (count < 5)
        throw GeometryError("compute_fi: half-line intersects the image in fewer than 5 pixels");

    double total = 0.0;
    for (double v : img.pixels()) total += v;
    const double image_mean = total / static_cast<double>(img.size());
    if (image_mean == 0.0) throw DetectionError("compute_fi: image mean is zero");

    const double line_mean = sum / static_cast<double>(count);
    return line_mean / image_mean - 1.0;
}

double compute_fi(const Image& img, const WakeCandidate& cand, int half_sign,
                  const ShipMaskSpec& resolved_mask) {
    return compute_fi(img, cand.r, cand.theta_deg, half_sign, resolved_mask.center_col,
                      resolved_mask.center_row);
}

const char* slot_name(int slot) {
    switch (slot) {
        case 0: return "turbulent";
        case 1: return "narrow_v_1";
        case 2: return "narrow_v_2";
        case 3: return "kelvin_1";
        case 4: return "kelvin_2";
        default: return "?";
    }
}

const char* wake_kind_name(WakeKind kind) {
    switch (kind) {
        case WakeKind::kTurbulent: return "turbulent";
        case WakeKind::kNarrowV: return "narrow_v";
        case WakeKind::kKelvin: return "kelvin";
    }
    return "?";
}

WakeReport confirm_candidates(const Image& img, const std::vector<WakeCandidate>& candidates,
                              const DetectionConfig& cfg) {
    const ShipMaskSpec mask = resolve_mask(cfg.mask, img.side());
    WakeReport report;

    std::vector<WakeCandidate> narrow, kelvin;
    for (WakeCandidate cand : candidates) {
        const bool dark_rule = (cand.kind == WakeKind::kTurbulent) ==
                               (cfg.rules == FiRuleSet::kCorrected);
        // score both half-lines; prefer the stronger correctly-signed index
        const double fi_pos = compute_fi(img, cand, +1, mask);
        const double fi_neg = compute_fi(img, cand, -1, mask);
        if (dark_rule) {
            cand.half_sign = fi_pos <= fi_neg ? +1 : -1;
            cand.fi = std::min(fi_pos, fi_neg);
        } else {
            cand.half_sign = fi_pos >= fi_neg ? +1 : -1;
            cand.fi = std::max(fi_pos, fi_neg);
        }
        if (cand.kind == WakeKind::kTurbulent) {
            cand.confirmed = cfg.rules == FiRuleSet::kCorrected
                                 ? cand.fi <= -cfg.fi_margin_turbulent
                                 : cand.fi >= 0.0;
            report.slots[0].candidate = cand;
        } else {
            cand.confirmed = cfg.rules == FiRuleSet::kCorrected ? cand.fi >= cfg.fi_margin
                                                                : cand.fi <= cfg.fi_margin;
            (cand.kind == WakeKind::kNarrowV ? narrow : kelvin).push_back(cand);
        }
    }

    auto assign = [&](std::vector<WakeCandidate>& list, int slot0) {
        std::stable_sort(list.begin(), list.end(), [](const WakeCandidate& a,
                                                      const WakeCandidate& b) {
            if (a.confirmed != b.confirmed) return a.confirmed;
            return a.peak_value > b.peak_value;
        });
        for (std::size_t k = 0; k < list.size() && k < 2; ++k)
            report.slots[slot0 + static_cast<int>(k)].candidate = list[k];
    };
    assign(narrow, 1);
    assign(kelvin, 3);

    for (WakeSlot& slot : report.slots)
        slot.detected = slot.candidate.has_value() && slot.candidate->confirmed;
    return report;
}

WakeReport detect_wakes(const Image& img, const DetectionConfig& cfg) {
    const ShipMaskSpec mask = resolve_mask(cfg.mask, img.side());
    const Image masked = mask_ship(img, mask);

    auto [estimate, diagnostics] = run_myula(masked, cfg.solver);

    const double center = 0.5 * (img.side() - 1);
    const double delta_r = cfg.search_delta_r > 0.0 ? cfg.search_delta_r : mask.radius + 2.0;
    const RegionMask region = search_region(estimate.grid(), mask.center_col - center,
                                            mask.center_row - center, delta_r);

    const WakeCandidate turbulent = detect_turbulent(estimate, region);

    std::vector<WakeCandidate> candidates{turbulent};
    for (WakeCandidate& c : detect_arms(estimate, region, turbulent, WakeKind::kNarrowV, cfg))
        candidates.push_back(c);
    for (WakeCandidate& c : detect_arms(estimate, region, turbulent, WakeKind::kKelvin, cfg))
        candidates.push_back(c);

    WakeReport report = confirm_candidates(masked, candidates, cfg);
    report.solver = std::move(diagnostics);
    report.turbulent_dependency_unconfirmed =
        report.slots[0].candidate.has_value() && !report.slots[0].candidate->confirmed;
    return report;
}

}  // namespace wakeradon
