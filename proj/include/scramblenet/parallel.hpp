#pragma once

// Fixed-order parallel map over an index range.

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace scramblenet {

inline constexpr const char* kWorkersEnv = "SCRAMBLENET_WORKERS";

/// Worker count from SCRAMBLENET_WORKERS, else the hardware concurrency.
inline int worker_count() {
  if (const char* env = std::getenv(kWorkersEnv)) {
    try {
      const int n = std::stoi(env);
      if (n >= 1) return n;
    } catch (const std::exception&) {
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

namespace detail {
inline thread_local bool in_parallel_region = false;
}  // namespace detail

/// out[i] = fn(i) for i in [0, n). Results are stored by index, so any
/// reduction over `out` in index order is independent of the worker count.
/// Nested calls from inside a worker run serially.
template <class T, class Fn>
std::vector<T> parallel_map(std::size_t n, Fn&& fn, int workers = worker_count()) {
  std::vector<T> out(n);
  std::size_t w = std::min<std::size_t>(static_cast<std::size_t>(std::max(workers, 1)), n);
  if (detail::in_parallel_region) w = 1;
  if (w <= 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  std::vector<std::exception_ptr> errors(w);
  std::vector<std::thread> pool;
  pool.reserve(w);
  for (std::size_t t = 0; t < w; ++t) {
    pool.emplace_back([&, t] {
      detail::in_parallel_region = true;
      try {
        for (std::size_t i = t; i < n; i += w) out[i] = fn(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

}  // namespace scramblenet
