#pragma once

// Minimal fixed-size worker pool for sweeps: each item runs on exactly one
// worker, results come back in input order.

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace speclab::harness {

inline int resolve_workers(int requested, std::size_t items) {
  int n = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
  n = std::max(n, 1);
  return static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(n), std::max<std::size_t>(items, 1)));
}

/// fn(item) for every item. The first exception thrown by any worker is
/// rethrown after all workers have stopped.
template <class T, class Fn>
auto parallel_map(const std::vector<T>& items, int workers, Fn fn)
    -> std::vector<decltype(fn(items.front()))> {
  using R = decltype(fn(items.front()));
  std::vector<R> results(items.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < items.size(); i = next++) {
      try {
        results[i] = fn(items[i]);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = items.size();
      }
    }
  };
  const int n = resolve_workers(workers, items.size());
  if (n == 1) {
    work();
  } else {
    std::vector<std::jthread> threads;
    for (int w = 0; w < n; ++w) threads.emplace_back(work);
  }
  if (error) std::rethrow_exception(error);
  return results;
}

}  // namespace speclab::harness
