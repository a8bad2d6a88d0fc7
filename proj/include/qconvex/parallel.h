#ifndef QCONVEX_PARALLEL_H_
#define QCONVEX_PARALLEL_H_

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace qconvex {

// Worker count: QCONVEX_THREADS when set to a positive integer, otherwise the
// hardware concurrency.
inline int MaxThreads() {
  if (const char* env = std::getenv("QCONVEX_THREADS")) {
    const int requested = std::atoi(env);
    if (requested > 0) return requested;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// Calls fn(i) for i in [0, count). Each index is handled exactly once and
// results must be written to per-index slots, which keeps every reduction
// performed afterwards independent of scheduling. The first exception thrown
// by a worker is rethrown on the calling thread.
template <class Fn>
void ParallelFor(int count, Fn&& fn) {
  const int threads = std::min(MaxThreads(), count);
  if (threads <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      for (int i = t; i < count; i += threads) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace qconvex

#endif  // QCONVEX_PARALLEL_H_
