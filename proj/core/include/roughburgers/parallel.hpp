#pragma once

#include <cstdlib>
#include <thread>
#include <vector>

namespace rough {

/// Worker count for sample-parallel loops. Controlled by the
/// ROUGHBURGERS_WORKERS environment variable; never affects numerics, only
/// wall clock (reductions are performed in sample-index order regardless).
inline int worker_count() {
  if (const char* env = std::getenv("ROUGHBURGERS_WORKERS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

/// Runs fn(i) for i in [0, n). fn must only write to state owned by index i;
/// callers reduce the per-index slots sequentially afterwards.
template <class F>
void parallel_for(std::size_t n, F&& fn) {
  const int workers = worker_count();
  if (workers <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  const std::size_t nw = std::min<std::size_t>(workers, n);
  std::vector<std::thread> pool;
  pool.reserve(nw);
  for (std::size_t w = 0; w < nw; ++w) {
    pool.emplace_back([&, w]() {
      for (std::size_t i = w; i < n; i += nw) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace rough
