#pragma once

#include <cstddef>
#include <functional>

namespace toep {

/// Worker count: TOEPLITZ_WORKERS when set, else hardware concurrency.
int worker_count();

/// Runs fn(i) for i in [0, n) on the worker pool. Callers write results into
/// index-addressed slots, so aggregation stays deterministic.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

} // namespace toep
