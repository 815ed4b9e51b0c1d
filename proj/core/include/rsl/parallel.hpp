#pragma once

#include <cstddef>
#include <functional>

namespace rsl {

/// Worker count used by parallel loops. Defaults to the hardware concurrency,
/// capped by the RSL_THREADS environment variable when set.
int thread_count();

/// Overrides the worker count for the current process (0 restores the default).
void set_thread_count(int n);

/// Runs body(begin, end) over a fixed partition of [0, n). The partition does
/// not depend on the worker count, so any body that writes to disjoint slots
/// produces identical results at every thread count.
void parallel_for_blocks(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace rsl
