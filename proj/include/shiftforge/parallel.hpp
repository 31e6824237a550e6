#pragma once

#include <cstddef>
#include <functional>

namespace shiftforge {

/// Worker count: SHIFTFORGE_THREADS if set and positive, else the
/// hardware concurrency (at least 1).
std::size_t thread_count();

/// Runs fn(i) for i in [0, n) on up to thread_count() threads. Each index
/// runs exactly once; callers write results into slot i.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace shiftforge
