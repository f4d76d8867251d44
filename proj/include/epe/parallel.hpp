#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace epe {

/// Worker count from EPE_THREADS, else the hardware concurrency (at least 1).
unsigned default_threads();

/// Runs body(i) for i in [0, n) over `threads` workers with static chunking.
/// Each index is visited exactly once, so results written to slot i are
/// independent of the worker count.
template <typename Body>
void parallel_for(std::size_t n, unsigned threads, Body&& body) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  const std::size_t chunk = (n + threads - 1) / threads;
  for (unsigned w = 0; w < threads; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([begin, end, &body] {
      for (std::size_t i = begin; i < end; ++i) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace epe
