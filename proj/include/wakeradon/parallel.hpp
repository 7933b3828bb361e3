#pragma once

#include <functional>

namespace wakeradon {

/// Worker count: hardware concurrency capped by the WAKE_RADON_THREADS
/// environment variable (values < 1 are treated as 1).
int worker_count();

/// Runs fn(begin, end) over a static partition of [0, n). Each index is
/// processed by exactly one worker with a fixed interior order, so results
/// are bit-identical for any worker count. Exceptions from workers are
/// rethrown on the calling thread.
void parallel_for(int n, const std::function<void(int, int)>& fn);

}  // namespace wakeradon
