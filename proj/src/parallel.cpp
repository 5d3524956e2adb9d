#include "meshflow/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace meshflow {

int thread_budget() {
  int budget = 0;
  if (const char* env = std::getenv("MESHFLOW_THREADS")) {
    budget = std::atoi(env);
  }
  if (budget <= 0) {
    budget = static_cast<int>(std::thread::hardware_concurrency());
  }
  return std::clamp(budget, 1, 256);
}

void parallel_for(int n, const std::function<void(int)>& fn) {
  const int threads = std::min(thread_budget(), n);
  if (threads <= 1 || n < 2048) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }

  const int chunk = (n + threads - 1) / threads;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    const int lo = t * chunk;
    const int hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&fn, lo, hi] {
      for (int i = lo; i < hi; ++i) fn(i);
    });
  }
  for (std::thread& th : pool) th.join();
}

}  // namespace meshflow
