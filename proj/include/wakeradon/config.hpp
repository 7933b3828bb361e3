#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "wakeradon/scene_simulator.hpp"
#include "wakeradon/wake_detection.hpp"

namespace wakeradon {

/// Flat ordered key=value store backing config files and report embedding.
struct KeyValues {
    std::map<std::string, std::string> entries;

    static KeyValues from_file(const std::string& path);
    static KeyValues from_text(const std::string& text, const std::string& origin);

    bool has(const std::string& key) const { return entries.count(key) != 0; }
    void set(const std::string& key, const std::string& value) { entries[key] = value; }

    std::string to_text() const;  // sorted "key = value" lines
};

/// Deterministic, exactly round-tripping double formatting ("%.17g").
std::string format_double(double v);

enum class SceneMode { kTable1, kSingle };

/// Merged configuration for every subcommand: defaults < config file < flags.
/// `resolved()` serializes every effective setting; `apply()` accepts every
/// key `resolved()` emits, so embedded report configs re-run exactly.
struct RunConfig {
    DetectionConfig detection;  // includes the solver config
    SceneSpec scene;
    SceneMode scene_mode = SceneMode::kTable1;

    int benchmark_seed_count = 5;
    std::uint64_t benchmark_base_seed = 1;
    double benchmark_noise_sigma = 0.15;

    std::string format = "text";  // text | json

    void apply(const KeyValues& kv);
    KeyValues resolved() const;
};

}  // namespace wakeradon
