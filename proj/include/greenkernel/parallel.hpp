#pragma once

#include <cstddef>
#include <functional>

namespace greenkernel {

/// Worker count: GREENKERNEL_THREADS if set to a positive integer, otherwise
/// the machine's hardware concurrency.
std::size_t worker_count();

/// Calls body(i) for i in [0, n) using up to worker_count() threads. Each index
/// runs exactly once; callers write to disjoint slots so results never depend
/// on scheduling. Exceptions from workers are rethrown on the calling thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace greenkernel
