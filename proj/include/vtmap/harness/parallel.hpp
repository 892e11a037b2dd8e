#pragma once

// Order-preserving parallel map over a vector. VTMAP_THREADS caps the worker
// count; unset or 0 means hardware concurrency.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace vtmap::harness {

inline std::size_t thread_count() {
  std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("VTMAP_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
  }
  return hw;
}

/// out[i] = fn(in[i]). The first exception thrown by any task is rethrown
/// after all workers have joined.
template <class T, class Fn>
auto parallel_map(const std::vector<T>& in, Fn fn) -> std::vector<decltype(fn(in.front()))> {
  using R = decltype(fn(in.front()));
  std::vector<std::optional<R>> slots(in.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::size_t failed_at = in.size();
  std::mutex failure_mutex;

  auto worker = [&] {
    for (std::size_t i = next++; i < in.size(); i = next++) {
      try {
        slots[i].emplace(fn(in[i]));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        // Keep the lowest index so the reported error does not depend on scheduling.
        if (i < failed_at) {
          failed_at = i;
          failure = std::current_exception();
        }
      }
    }
  };

  const std::size_t workers = std::min(thread_count(), std::max<std::size_t>(in.size(), 1));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<R> out;
  out.reserve(in.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace vtmap::harness
