#pragma once

#include <cstddef>
#include <functional>

namespace landscape {

/// Worker count used when the caller passes threads <= 0: the
/// LANDSCAPE_THREADS environment variable if set, else hardware concurrency.
int default_thread_count();

/// Resolve a requested thread count (<= 0 means default_thread_count()).
int resolve_threads(int requested);

/// Run body(i) for i in [0, count) on up to `threads` workers.
///
/// Indices are split into contiguous blocks; body must only write to state
/// owned by index i. The first exception thrown by any worker is rethrown.
void parallel_for(std::size_t count, int threads,
                  const std::function<void(std::size_t)>& body);

}  // namespace landscape
