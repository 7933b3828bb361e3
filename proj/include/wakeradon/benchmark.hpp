#pragma once

#include "wakeradon/report.hpp"

namespace wakeradon {

/// Runs detection over the Table-1 style suite (6 scenes per seed, seeds
/// benchmark_base_seed .. +seed_count-1) and scores each of the five wake
/// slots against ground truth. Scenes are dispatched to a worker pool;
/// results merge by scene index, so the outcome does not depend on the
/// worker count. A failing scene is recorded per-scene and skipped in the
/// aggregate.
BenchmarkResult run_benchmark(const RunConfig& cfg);

}  // namespace wakeradon
