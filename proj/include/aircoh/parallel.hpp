#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>
#include <vector>

#include "aircoh/error.hpp"

namespace aircoh {

/// Static-partition parallel map over [0, n). Each index is handled by
/// exactly one worker and results are written in place, so the output does
/// not depend on the thread count.
class Parallel {
 public:
  explicit Parallel(unsigned threads = 1) : threads_(std::max(1u, threads)) {}

  static Parallel hardware() { return Parallel(std::max(1u, std::thread::hardware_concurrency())); }

  unsigned threads() const noexcept { return threads_; }

  /// Runs fn(i) for every i. On failure rethrows as GridEvalError carrying the
  /// smallest failing index (the same index whatever the thread count).
  template <class Fn>
  void for_each_index(std::size_t n, Fn&& fn) const {
    std::size_t failed = std::numeric_limits<std::size_t>::max();
    std::exception_ptr first;
    std::mutex guard;
    auto run = [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(guard);
          if (i < failed) {
            failed = i;
            first = std::current_exception();
          }
          return;
        }
      }
    };
    const std::size_t workers = std::min<std::size_t>(threads_, std::max<std::size_t>(1, n));
    if (workers <= 1) {
      run(0, n);
    } else {
      std::vector<std::jthread> pool;
      pool.reserve(workers);
      const std::size_t chunk = (n + workers - 1) / workers;
      for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t b = w * chunk;
        const std::size_t e = std::min(n, b + chunk);
        if (b < e) pool.emplace_back(run, b, e);
      }
    }
    if (first) rethrow_indexed(first, failed);
  }

 private:
  [[noreturn]] static void rethrow_indexed(std::exception_ptr ep, std::size_t index) {
    try {
      std::rethrow_exception(ep);
    } catch (const GridEvalError&) {
      throw;
    } catch (const ConvergenceError& e) {
      throw GridEvalError(std::string(e.what()) + " (grid index " + std::to_string(index) + ")", index, true);
    } catch (const std::exception& e) {
      throw GridEvalError(std::string(e.what()) + " (grid index " + std::to_string(index) + ")", index, false);
    }
  }

  unsigned threads_;
};

}  // namespace aircoh
