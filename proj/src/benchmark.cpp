#include "wakeradon/benchmark.hpp"

#include <vector>

#include "wakeradon/parallel.hpp"
#include "wakeradon/scene_simulator.hpp"

namespace wakeradon {

BenchmarkResult run_benchmark(const RunConfig& cfg) {
    if (cfg.benchmark_seed_count < 1)
        throw ConfigurationError("benchmark: seed_count must be >= 1");

    std::vector<std::uint64_t> seeds(static_cast<std::size_t>(cfg.benchmark_seed_count));
    for (std::size_t k = 0; k < seeds.size(); ++k) seeds[k] = cfg.benchmark_base_seed + k;
    const auto suite = table1_suite(cfg.benchmark_noise_sigma, seeds);

    // Resolve the Lipschitz constant once; every scene shares the grid.
    DetectionConfig det = cfg.detection;
    if (det.solver.lipschitz <= 0.0 && !suite.empty()) {
        const RadonGrid grid =
            RadonGrid::for_image(suite.front().first.side(), det.solver.n_theta);
        det.solver.lipschitz = estimate_lipschitz(grid, grid.side).value;
    }

    BenchmarkResult result;
    result.rows.resize(suite.size());
    parallel_for(static_cast<int>(suite.size()), [&](int begin, int end) {
        for (int k = begin; k < end; ++k) {
            BenchmarkSceneRow& row = result.rows[static_cast<std::size_t>(k)];
            row.index = k;
            row.seed = seeds[static_cast<std::size_t>(k) / 6];
            row.truth = suite[static_cast<std::size_t>(k)].second.visibility;
            try {
                DetectionConfig scene_cfg = det;
                scene_cfg.solver.seed = det.solver.seed + static_cast<std::uint64_t>(k);
                const WakeReport report =
                    detect_wakes(suite[static_cast<std::size_t>(k)].first, scene_cfg);
                for (int s = 0; s < 5; ++s) row.detected[s] = report.slots[s].detected;
            } catch (const std::exception& e) {
                row.error = e.what();
            }
        }
    });

    for (const BenchmarkSceneRow& row : result.rows) {
        if (!row.error.empty()) {
            ++result.failed_scenes;
            continue;
        }
        for (int s = 0; s < 5; ++s) {
            ++result.total_slots;
            if (row.truth[s] && row.detected[s]) ++result.tp;
            else if (!row.truth[s] && !row.detected[s]) ++result.tn;
            else if (!row.truth[s] && row.detected[s]) ++result.fp;
            else ++result.fn;
        }
    }
    return result;
}

}  // namespace wakeradon
