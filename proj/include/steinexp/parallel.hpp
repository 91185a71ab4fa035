#pragma once

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace steinexp::detail {

/// Runs fn over contiguous index chunks [begin, end) on `workers` threads.
/// Callers key their randomness to item indices, so the chunking (and hence
/// the worker count) never changes results.
inline void parallel_for_items(std::size_t count, int workers,
                               const std::function<void(std::size_t, std::size_t)>& fn) {
  if (count == 0) return;
  if (workers < 1) workers = 1;
  std::size_t w = std::min<std::size_t>(workers, count);
  if (w == 1) {
    fn(0, count);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(w);
  std::size_t base = count / w, extra = count % w, begin = 0;
  for (std::size_t k = 0; k < w; ++k) {
    std::size_t len = base + (k < extra ? 1 : 0);
    pool.emplace_back(fn, begin, begin + len);
    begin += len;
  }
  for (auto& th : pool) th.join();
}

}  // namespace steinexp::detail
