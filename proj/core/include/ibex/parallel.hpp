#pragma once

#include <cstdint>
#include <functional>

namespace ibex {

/// Worker count used when a caller passes threads <= 0: the IBEX_THREADS
/// environment variable if set to a positive integer, else the hardware
/// concurrency (at least 1).
int default_thread_count();

/// Runs body(i) for i in [0, n) across a pool of threads with dynamic
/// chunking. Exceptions from the body are rethrown on the calling thread.
void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& body,
                  int threads = 0);

}  // namespace ibex
