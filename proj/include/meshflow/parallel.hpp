#pragma once

#include <functional>

namespace meshflow {

// Worker count derived from the MESHFLOW_THREADS environment variable.
// Unset, "0" or unparsable means hardware concurrency.
int thread_budget();

// Runs fn(i) for i in [0, n) on up to thread_budget() threads, statically
// chunked. Callers must only write to index-i slots so the result is
// identical for any thread count.
void parallel_for(int n, const std::function<void(int)>& fn);

}  // namespace meshflow
