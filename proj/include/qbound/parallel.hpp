#pragma once

#include <cstddef>
#include <functional>

namespace qbound {

/// Worker count from QBOUND_THREADS (unset or 0 means hardware concurrency).
std::size_t worker_count();

/// Runs body(i) for i in [0, n) over contiguous blocks on worker_count()
/// threads. Callers write results into per-index slots and reduce serially,
/// which keeps outputs independent of the worker count. The first exception
/// thrown by any block is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace qbound
