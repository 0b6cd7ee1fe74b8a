#pragma once

#include <functional>

namespace cdforge {

// Resolve a requested worker count: <= 0 means auto (hardware concurrency,
// overridable by the CDFORGE_THREADS environment variable).
int resolve_threads(int requested);

// Apply fn to 0..n-1 on up to `threads` workers.  Each index writes only its
// own output slot, so results are identical for any worker count.  The first
// exception thrown by any task is rethrown on the calling thread.
void parallel_for(int n, int threads, const std::function<void(int)>& fn);

}  // namespace cdforge
