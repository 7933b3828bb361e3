#pragma once

#include <string>

#include "wakeradon/config.hpp"
#include "wakeradon/wake_detection.hpp"

namespace wakeradon {

/// Detection report with the fully resolved configuration embedded verbatim
/// (the [config] section of the text form is itself a valid config file).
/// Reports never contain wall-clock data, so identical inputs render
/// byte-identical output.
std::string render_detect_report(const RunConfig& cfg, const WakeReport& report,
                                 const std::string& input_label);

struct BenchmarkSceneRow {
    int index = 0;
    std::uint64_t seed = 0;
    std::array<bool, 5> truth{};
    std::array<bool, 5> detected{};
    std::string error;  // non-empty when the scene failed
};

struct BenchmarkResult {
    std::vector<BenchmarkSceneRow> rows;
    int tp = 0, tn = 0, fp = 0, fn = 0;
    int total_slots = 0;
    int failed_scenes = 0;

    double pct(int count) const {
        return total_slots > 0 ? 100.0 * count / total_slots : 0.0;
    }
    double accuracy_pct() const { return pct(tp) + pct(tn); }
};

std::string render_benchmark_report(const RunConfig& cfg, const BenchmarkResult& result);

}  // namespace wakeradon
