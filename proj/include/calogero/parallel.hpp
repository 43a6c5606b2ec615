#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace calogero {

/// Limits on problem size plus the worker count. Every computation that
/// enumerates a basis checks these before allocating.
struct Config {
  std::size_t max_modes = 6;
  std::size_t max_degree = 6;
  std::size_t max_basis = 200000;
  std::size_t threads = std::max(1u, std::thread::hardware_concurrency());
};

/// Calls body(i) for i in [0, n) on up to `threads` workers. Results must be
/// written to slot i by the caller, which keeps output order independent of
/// scheduling. If several calls throw, the exception of the lowest index wins.
template <class Body>
void parallel_for(std::size_t n, std::size_t threads, Body&& body) {
  threads = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(n, 1));
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(n);
  {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) {
          try {
            body(i);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace calogero
