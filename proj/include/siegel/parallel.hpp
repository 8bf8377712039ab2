#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace siegel {

/// Runs fn(i) for i in [0, n) on a static partition over hardware threads.
/// fn must only write to per-index state; the first exception is rethrown.
template <class Fn>
void parallel_for(std::size_t n, Fn&& fn, std::size_t min_chunk = 64) {
  const std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers = std::min(hw, (n + min_chunk - 1) / std::max<std::size_t>(min_chunk, 1));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::exception_ptr err;
  std::mutex mu;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w * n / workers; i < (w + 1) * n / workers; ++i) fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!err) err = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace siegel
