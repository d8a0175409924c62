#pragma once

#include <cstddef>
#include <functional>

namespace phaseflow {

/// Number of worker threads: PHASEFLOW_THREADS if set, hardware concurrency
/// otherwise, always at least 1.
int thread_count();

/// Run fn(begin, end) over a deterministic partition of [0, n). Each output
/// range is owned by exactly one worker, so per-point writes are race-free and
/// results do not depend on the schedule.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace phaseflow
