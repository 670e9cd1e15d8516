#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace ymgap::detail {

// Evaluates fn(i) for i in [0, count) on up to `workers` threads and returns the
// results in index order. Callers reduce the returned vector sequentially, so the
// outcome does not depend on the worker count.
template <typename Fn>
auto parallel_map(std::size_t count, int workers, Fn&& fn) {
  using Result = decltype(fn(std::size_t{0}));
  std::vector<Result> out(count);
  const auto threads =
      static_cast<std::size_t>(std::clamp<std::size_t>(workers > 0 ? workers : 1, 1, count > 0 ? count : 1));
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < count; i += threads) out[i] = fn(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace ymgap::detail
