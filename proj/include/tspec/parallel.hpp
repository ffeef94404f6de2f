#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace tspec {

/// Worker count: hardware concurrency, capped by the TSPEC_THREADS environment variable.
inline unsigned worker_count() {
  unsigned n = std::max(1U, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("TSPEC_THREADS")) {
    try {
      const long cap = std::stol(env);
      if (cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
    } catch (const std::exception&) {
      // ignore malformed values
    }
  }
  return n;
}

/// Runs fn(i) for i in [0, count). Each index is visited exactly once; callers write
/// into index-addressed slots so results do not depend on scheduling. The first
/// exception thrown by any task is rethrown on the calling thread.
template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn) {
  const unsigned workers = std::min<std::size_t>(worker_count(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        next = count;
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (unsigned t = 1; t < workers; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace tspec
