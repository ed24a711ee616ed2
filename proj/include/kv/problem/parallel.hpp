#pragma once

#include <functional>

namespace kv {

// Worker cap: KV_THREADS if set and positive, else the hardware concurrency.
int worker_count();

// Runs body(i) for i in [0, n); distinct indices may run concurrently.  The
// first exception thrown by any body is rethrown after all workers join.
void parallel_for(int n, const std::function<void(int)>& body);

}  // namespace kv
