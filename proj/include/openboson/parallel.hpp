#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace openboson {

// Runs fn(i) for every i in [0, n) on up to max_threads workers pulling from
// a shared index counter. Each call must write only to its own output slot;
// callers keep results ordered by index, so the schedule never shows up in
// the output. The first exception thrown by any worker is rethrown here.
inline void parallel_for(std::size_t n, unsigned max_threads,
                         const std::function<void(std::size_t)>& fn) {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) {
    hw = 1;
  }
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(
      n, std::min<unsigned>(max_threads == 0 ? 1 : max_threads, hw)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) {
      fn(i);
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  const auto drain = [&]() {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) {
        return;
      }
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) {
          first_error = std::current_exception();
        }
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back(drain);
  }
  for (auto& t : pool) {
    t.join();
  }
  if (first_error) {
    std::rethrow_exception(first_error);
  }
}

}  // namespace openboson
