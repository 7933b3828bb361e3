#include "wakeradon/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace wakeradon {
namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigurationError("config: key '" + key + "' expects a number, got '" + value +
                                 "'");
    }
}

long parse_long(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const long v = std::stol(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigurationError("config: key '" + key + "' expects an integer, got '" + value +
                                 "'");
    }
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const unsigned long long v = std::stoull(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return static_cast<std::uint64_t>(v);
    } catch (const std::exception&) {
        throw ConfigurationError("config: key '" + key + "' expects an unsigned integer, got '" +
                                 value + "'");
    }
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

KeyValues KeyValues::from_text(const std::string& text, const std::string& origin) {
    KeyValues kv;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigurationError(origin + ":" + std::to_string(lineno) +
                                     ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw ConfigurationError(origin + ":" + std::to_string(lineno) + ": empty key");
        kv.entries[key] = value;
    }
    return kv;
}

KeyValues KeyValues::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("config file " + path + ": cannot open");
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_text(buf.str(), path);
}

std::string KeyValues::to_text() const {
    std::string out;
    for (const auto& [key, value] : entries) {
        out += key;
        out += " = ";
        out += value;
        out += "\n";
    }
    return out;
}

void RunConfig::apply(const KeyValues& kv) {
    for (const auto& [key, value] : kv.entries) {
        SolverConfig& s = detection.solver;
        if (key == "solver.gamma") s.gamma = parse_double(key, value);
        else if (key == "solver.lipschitz") s.lipschitz = parse_double(key, value);
        else if (key == "solver.delta") s.delta = parse_double(key, value);
        else if (key == "solver.omega") s.omega = parse_double(key, value);
        else if (key == "solver.delta_over_L") s.delta_over_L = parse_double(key, value);
        else if (key == "solver.omega_times_inv_L") s.omega_times_inv_L = parse_double(key, value);
        else if (key == "solver.max_iter") s.max_iter = static_cast<int>(parse_long(key, value));
        else if (key == "solver.tol") s.tol = parse_double(key, value);
        else if (key == "solver.seed") s.seed = parse_u64(key, value);
        else if (key == "solver.noise_scale") s.noise_scale = parse_double(key, value);
        else if (key == "solver.n_theta") s.n_theta = static_cast<int>(parse_long(key, value));
        else if (key == "solver.estimate") {
            if (value == "final") s.estimate = PointEstimate::kFinalIterate;
            else if (value == "trailing_mean") s.estimate = PointEstimate::kTrailingMean;
            else throw ConfigurationError("config: solver.estimate must be final|trailing_mean");
        } else if (key == "solver.trailing_window") {
            s.trailing_window = static_cast<int>(parse_long(key, value));
        } else if (key == "detection.mask_center_col") {
            detection.mask.center_col = parse_double(key, value);
        } else if (key == "detection.mask_center_row") {
            detection.mask.center_row = parse_double(key, value);
        } else if (key == "detection.mask_radius") {
            detection.mask.radius = parse_double(key, value);
        } else if (key == "detection.delta_r") {
            detection.search_delta_r = parse_double(key, value);
        } else if (key == "detection.narrow_v_max_deg") {
            detection.narrow_v_max_deg = parse_double(key, value);
        } else if (key == "detection.kelvin_angle_deg") {
            detection.kelvin_angle_deg = parse_double(key, value);
        } else if (key == "detection.kelvin_tol_deg") {
            detection.kelvin_tol_deg = parse_double(key, value);
        } else if (key == "detection.fi_margin") {
            detection.fi_margin = parse_double(key, value);
        } else if (key == "detection.fi_margin_turbulent") {
            detection.fi_margin_turbulent = parse_double(key, value);
        } else if (key == "detection.arm_floor_sigmas") {
            detection.arm_floor_sigmas = parse_double(key, value);
        } else if (key == "detection.rules") {
            if (value == "corrected") detection.rules = FiRuleSet::kCorrected;
            else if (value == "literal") detection.rules = FiRuleSet::kPaperLiteral;
            else throw ConfigurationError("config: detection.rules must be corrected|literal");
        } else if (key == "scene.mode") {
            if (value == "table1") scene_mode = SceneMode::kTable1;
            else if (value == "single") scene_mode = SceneMode::kSingle;
            else throw ConfigurationError("config: scene.mode must be table1|single");
        } else if (key == "scene.side") {
            scene.side = static_cast<int>(parse_long(key, value));
        } else if (key == "scene.background") {
            scene.background_mean = parse_double(key, value);
        } else if (key == "scene.seed") {
            scene.seed = parse_u64(key, value);
        } else if (key == "scene.noise_model") {
            if (value == "none") scene.noise.model = NoiseModel::kNone;
            else if (value == "gaussian") scene.noise.model = NoiseModel::kGaussian;
            else if (value == "gamma_speckle") scene.noise.model = NoiseModel::kGammaSpeckle;
            else throw ConfigurationError(
                "config: scene.noise_model must be none|gaussian|gamma_speckle");
        } else if (key == "scene.noise_level") {
            scene.noise.sigma_or_looks = parse_double(key, value);
        } else if (key == "scene.turbulent") {
            if (parse_long(key, value) != 0) {
                if (!scene.turbulent) scene.turbulent = TurbulentSpec{};
            } else {
                scene.turbulent.reset();
            }
        } else if (key == "scene.turbulent_theta_deg") {
            if (!scene.turbulent) scene.turbulent = TurbulentSpec{};
            scene.turbulent->theta_deg = parse_double(key, value);
        } else if (key == "scene.turbulent_offset_r") {
            if (!scene.turbulent) scene.turbulent = TurbulentSpec{};
            scene.turbulent->offset_r = parse_double(key, value);
        } else if (key == "scene.turbulent_width") {
            if (!scene.turbulent) scene.turbulent = TurbulentSpec{};
            scene.turbulent->width = parse_double(key, value);
        } else if (key == "scene.turbulent_contrast") {
            if (!scene.turbulent) scene.turbulent = TurbulentSpec{};
            scene.turbulent->contrast = parse_double(key, value);
        } else if (key == "scene.arms") {
            scene.arms.clear();
            if (!value.empty() && value != "none") {
                // semicolon-separated entries: kind,side,delta_deg,width,contrast,half
                std::istringstream arms(value);
                std::string entry;
                while (std::getline(arms, entry, ';')) {
                    std::istringstream fields(entry);
                    std::string kind;
                    ArmSpec arm;
                    std::string tok;
                    if (!std::getline(fields, kind, ',')) continue;
                    kind = trim(kind);
                    if (kind == "narrow_v") arm.kind = WakeKind::kNarrowV;
                    else if (kind == "kelvin") arm.kind = WakeKind::kKelvin;
                    else throw ConfigurationError("config: arm kind must be narrow_v|kelvin");
                    auto next = [&](double& out) {
                        if (!std::getline(fields, tok, ','))
                            throw ConfigurationError("config: scene.arms entry needs 6 fields");
                        out = parse_double(key, trim(tok));
                    };
                    double side_v, delta, width, contrast, half;
                    next(side_v);
                    next(delta);
                    next(width);
                    next(contrast);
                    next(half);
                    arm.side = side_v < 0 ? -1 : +1;
                    arm.delta_theta_deg = delta;
                    arm.width = width;
                    arm.contrast = contrast;
                    arm.half_sign = half < 0 ? -1 : +1;
                    scene.arms.push_back(arm);
                }
            }
        } else if (key == "benchmark.seed_count") {
            benchmark_seed_count = static_cast<int>(parse_long(key, value));
        } else if (key == "benchmark.base_seed") {
            benchmark_base_seed = parse_u64(key, value);
        } else if (key == "benchmark.noise_sigma") {
            benchmark_noise_sigma = parse_double(key, value);
        } else if (key == "output.format") {
            if (value != "text" && value != "json")
                throw ConfigurationError("config: output.format must be text|json");
            format = value;
        } else {
            throw ConfigurationError("config: unknown key '" + key + "'");
        }
    }
}

KeyValues RunConfig::resolved() const {
    KeyValues kv;
    const SolverConfig& s = detection.solver;
    kv.set("solver.gamma", format_double(s.gamma));
    kv.set("solver.lipschitz", format_double(s.lipschitz));
    kv.set("solver.delta", format_double(s.delta));
    kv.set("solver.omega", format_double(s.omega));
    kv.set("solver.delta_over_L", format_double(s.delta_over_L));
    kv.set("solver.omega_times_inv_L", format_double(s.omega_times_inv_L));
    kv.set("solver.max_iter", std::to_string(s.max_iter));
    kv.set("solver.tol", format_double(s.tol));
    kv.set("solver.seed", std::to_string(s.seed));
    kv.set("solver.noise_scale", format_double(s.noise_scale));
    kv.set("solver.n_theta", std::to_string(s.n_theta));
    kv.set("solver.estimate",
           s.estimate == PointEstimate::kFinalIterate ? "final" : "trailing_mean");
    kv.set("solver.trailing_window", std::to_string(s.trailing_window));

    kv.set("detection.mask_center_col", format_double(detection.mask.center_col));
    kv.set("detection.mask_center_row", format_double(detection.mask.center_row));
    kv.set("detection.mask_radius", format_double(detection.mask.radius));
    kv.set("detection.delta_r", format_double(detection.search_delta_r));
    kv.set("detection.narrow_v_max_deg", format_double(detection.narrow_v_max_deg));
    kv.set("detection.kelvin_angle_deg", format_double(detection.kelvin_angle_deg));
    kv.set("detection.kelvin_tol_deg", format_double(detection.kelvin_tol_deg));
    kv.set("detection.fi_margin", format_double(detection.fi_margin));
    kv.set("detection.fi_margin_turbulent", format_double(detection.fi_margin_turbulent));
    kv.set("detection.arm_floor_sigmas", format_double(detection.arm_floor_sigmas));
    kv.set("detection.rules",
           detection.rules == FiRuleSet::kCorrected ? "corrected" : "literal");

    kv.set("scene.mode", scene_mode == SceneMode::kTable1 ? "table1" : "single");
    kv.set("scene.side", std::to_string(scene.side));
    kv.set("scene.background", format_double(scene.background_mean));
    kv.set("scene.seed", std::to_string(scene.seed));
    kv.set("scene.noise_model", scene.noise.model == NoiseModel::kNone ? "none"
                                : scene.noise.model == NoiseModel::kGaussian
                                    ? "gaussian"
                                    : "gamma_speckle");
    kv.set("scene.noise_level", format_double(scene.noise.sigma_or_looks));
    kv.set("scene.turbulent", scene.turbulent ? "1" : "0");
    if (scene.turbulent) {
        kv.set("scene.turbulent_theta_deg", format_double(scene.turbulent->theta_deg));
        kv.set("scene.turbulent_offset_r", format_double(scene.turbulent->offset_r));
        kv.set("scene.turbulent_width", format_double(scene.turbulent->width));
        kv.set("scene.turbulent_contrast", format_double(scene.turbulent->contrast));
    }
    std::string arms;
    for (const ArmSpec& arm : scene.arms) {
        if (!arms.empty()) arms += ";";
        arms += arm.kind == WakeKind::kNarrowV ? "narrow_v" : "kelvin";
        arms += ",";
        arms += std::to_string(arm.side);
        arms += ",";
        arms += format_double(arm.delta_theta_deg);
        arms += ",";
        arms += format_double(arm.width);
        arms += ",";
        arms += format_double(arm.contrast);
        arms += ",";
        arms += std::to_string(arm.half_sign);
    }
    kv.set("scene.arms", arms.empty() ? "none" : arms);

    kv.set("benchmark.seed_count", std::to_string(benchmark_seed_count));
    kv.set("benchmark.base_seed", std::to_string(benchmark_base_seed));
    kv.set("benchmark.noise_sigma", format_double(benchmark_noise_sigma));
    kv.set("output.format", format);
    return kv;
}

}  // namespace wakeradon
