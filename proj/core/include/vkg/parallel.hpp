#pragma once

#include <cstddef>
#include <functional>

namespace vkg {

/// Number of worker threads used by parallel_for (default 1).
void set_thread_count(unsigned n);
unsigned thread_count();

/// Runs body(i) for i in [0, n). Each index is processed exactly once; the
/// caller writes results into per-index slots so outputs are independent of
/// the thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

} // namespace vkg
