#pragma once

#include <cstddef>
#include <functional>

namespace iplab::util {

/// Worker cap: IPLAB_THREADS when set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
std::size_t worker_count();

/// Runs fn(i) for every i in [0, n) on up to worker_count() threads. Tasks are
/// claimed dynamically, so fn must not depend on execution order. The first
/// exception thrown by any task is rethrown after all workers finish.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace iplab::util
