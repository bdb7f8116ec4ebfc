#pragma once

// Minimal fork-join helper. Work is split into fixed chunks assigned round
// robin, so any reduction done in chunk order is independent of the actual
// thread count.

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace su2k {

inline int resolve_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : int(hw);
}

/// Runs fn(i) for every i in [0, n). fn must be safe to call concurrently
/// for distinct indices.
inline void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn) {
  const int t = resolve_threads(threads);
  if (t <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(std::size_t(t));
  for (int w = 0; w < t; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = std::size_t(w); i < n; i += std::size_t(t)) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace su2k
