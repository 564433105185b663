#pragma once

#include <cstddef>
#include <functional>

namespace gndline {

/// Number of worker threads for sweeps. Reads GNDLINE_THREADS once per
/// process; 0 or unset means hardware concurrency.
std::size_t sweep_thread_count();

/// Runs body(i) for i in [0, n). Work is split across sweep_thread_count()
/// threads; results must be written by index so output order stays
/// deterministic. The first exception thrown by any body is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace gndline
