#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <optional>
#include <thread>
#include <vector>

namespace rindler {

inline unsigned default_thread_count() { return std::max(1u, std::thread::hardware_concurrency()); }

/// Applies fn to every item on a small thread pool; results come back in input order.
/// The first exception thrown by fn (in input order) is rethrown after all workers stop.
template <class T, class F>
auto parallel_map(const std::vector<T>& items, F fn, unsigned threads = default_thread_count()) {
  using R = decltype(fn(items.front()));
  std::vector<std::optional<R>> slots(items.size());
  std::vector<std::exception_ptr> errors(items.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < items.size();) {
      try {
        slots[k].emplace(fn(items[k]));
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  const unsigned n = std::min<std::size_t>(std::max(1u, threads), std::max<std::size_t>(items.size(), 1));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<R> out;
  out.reserve(items.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace rindler
