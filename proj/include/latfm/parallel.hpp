#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace latfm {

/// Worker count from LATFM_THREADS (default 1, clamped to [1, 64]).
std::size_t worker_count();

/// out[i] = fn(i) for i in [0, n). Results land in index order whatever the
/// worker count; the first exception (lowest index) is rethrown.
template <class R, class Fn>
std::vector<R> parallel_map(std::size_t n, Fn&& fn, std::size_t workers = worker_count()) {
  std::vector<R> out(n);
  if (workers <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(n);
  auto run = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) {
      try {
        out[i] = fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  const std::size_t k = workers < n ? workers : n;
  for (std::size_t t = 0; t < k; ++t) pool.emplace_back(run);
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace latfm
