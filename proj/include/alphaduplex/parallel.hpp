#pragma once

#include <cstddef>
#include <functional>

namespace alphaduplex {

/// Worker count from ALPHADUPLEX_THREADS, else hardware concurrency (>= 1).
unsigned worker_count();

/// Calls fn(i) for i in [0, n) on up to `workers` threads. Each index runs
/// exactly once; callers write results into per-index slots so the output
/// does not depend on scheduling. The first exception thrown is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn, unsigned workers = worker_count());

}  // namespace alphaduplex
