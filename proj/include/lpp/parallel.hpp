#pragma once

#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace lpp {

// Runs body(i) for i in [0, count) across at most `workers` threads.
// Indices are split into contiguous chunks; callers that write results
// into slot i get output independent of the worker count. The first
// exception thrown by any task is rethrown after all threads join.
template <class Body>
void parallel_for(std::size_t count, unsigned workers, Body&& body) {
  if (count == 0) return;
  if (workers <= 1 || count == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  const std::size_t n_threads =
      std::min<std::size_t>(workers, count);
  std::vector<std::thread> pool;
  pool.reserve(n_threads);
  std::vector<std::exception_ptr> errors(n_threads);
  for (std::size_t t = 0; t < n_threads; ++t) {
    const std::size_t begin = count * t / n_threads;
    const std::size_t end = count * (t + 1) / n_threads;
    pool.emplace_back([&, t, begin, end] {
      try {
        for (std::size_t i = begin; i < end; ++i) body(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& err : errors)
    if (err) std::rethrow_exception(err);
}

}  // namespace lpp
