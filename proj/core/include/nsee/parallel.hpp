#pragma once

#include <cstddef>
#include <functional>

namespace nsee {

/// Worker count: NSEE_THREADS if set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
std::size_t worker_count();

/// Calls f(i) for i in [0, n) on up to worker_count() threads. Indices are
/// handed out dynamically; the first exception thrown is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& f);

}  // namespace nsee
