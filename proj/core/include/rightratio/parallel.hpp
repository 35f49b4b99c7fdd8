#pragma once

#include <cstddef>
#include <functional>

namespace rr {

/// Worker count: RIGHT_RATIO_THREADS when set and nonzero, otherwise the
/// hardware concurrency.
std::size_t worker_count();

/// Runs fn(i) for i in [0, n) across worker threads.  fn must be safe to call
/// concurrently for distinct indices.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

} // namespace rr
