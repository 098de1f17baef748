#pragma once

#include <cstddef>
#include <functional>

namespace ptssh {

/// Worker count for sweep evaluation: the PTSSH_THREADS environment variable,
/// or the hardware concurrency when unset or 0. Always at least 1.
std::size_t thread_budget();

/// Runs fn(0..n-1) across the thread budget. Callers own output slots per
/// index, so completion order never affects results. The first exception
/// thrown by any worker is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace ptssh
