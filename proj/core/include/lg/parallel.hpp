#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace lg {

/// Runs f(chunk) for chunk = 0..count-1 on a small thread pool and returns the
/// results in chunk order, so merging is independent of scheduling.
template <typename F>
auto run_chunks(std::size_t count, F f) -> std::vector<decltype(f(std::size_t{}))> {
  using R = decltype(f(std::size_t{}));
  std::vector<R> results(count);
  std::size_t workers = std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, 16);
  workers = std::min(workers, count);
  if (workers <= 1) {
    for (std::size_t c = 0; c < count; ++c) results[c] = f(c);
    return results;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(count);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t c = next++; c < count; c = next++) {
        try {
          results[c] = f(c);
        } catch (...) {
          errors[c] = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return results;
}

}  // namespace lg
