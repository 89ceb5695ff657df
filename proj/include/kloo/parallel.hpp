#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace kloo {

/// Worker cap: KLOO_THREADS when set and positive, else the hardware concurrency.
size_t worker_count();

/// Runs fn(i) for i in [0, tasks) on up to worker_count() threads and returns the
/// results in index order, so merged totals never depend on scheduling.
template <class Fn>
auto parallel_map(size_t tasks, Fn fn) -> std::vector<decltype(fn(size_t{0}))> {
  using R = decltype(fn(size_t{0}));
  std::vector<R> out(tasks);
  const size_t workers = std::min(worker_count(), tasks);
  if (workers <= 1) {
    for (size_t i = 0; i < tasks; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (size_t i = next++; i < tasks; i = next++) {
        try {
          out[i] = fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          next = tasks;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return out;
}

}  // namespace kloo
