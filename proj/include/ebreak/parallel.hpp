#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace ebreak {

// Hardware concurrency, capped by EBREAK_THREADS when that is a positive integer.
unsigned worker_limit();

// Calls f(i) once for every i in [0, n). Callers write results by index, so
// the outcome does not depend on scheduling. The first exception thrown by
// any call is rethrown after all workers stop.
template <class F>
void parallel_for(std::size_t n, F&& f) {
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(worker_limit(), n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto run = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        f(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        next = n;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(run);
  run();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace ebreak
