#pragma once

#include <cstddef>
#include <functional>

namespace satsec {

/// Number of worker threads to use for a requested count; 0 means one per
/// hardware thread.
int resolve_workers(int requested);

/// Calls body(i) for every i in [0, n). Indices are handed out dynamically,
/// so body must only write to state owned by index i. The first exception
/// thrown by any call is rethrown after all workers have stopped.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& body);

}  // namespace satsec
