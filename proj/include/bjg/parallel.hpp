#pragma once

// Index-keyed parallel map. Each task writes only its own slot, so results do
// not depend on the number of workers or on scheduling.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <type_traits>
#include <vector>

namespace bjg {

inline std::size_t resolve_workers(std::size_t requested) {
  if (requested > 0) return requested;
  return std::max<std::size_t>(1, std::thread::hardware_concurrency());
}

// Calls task(i) for i in [0, count) on up to `workers` threads (0 = hardware).
// The first exception thrown by any task is rethrown after all threads join.
template <class Task>
auto parallel_map(std::size_t count, std::size_t workers, Task task) {
  using Result = std::invoke_result_t<Task, std::size_t>;
  std::vector<std::optional<Result>> slots(count);
  const std::size_t threads = std::min(resolve_workers(workers), std::max<std::size_t>(count, 1));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_lock;

  auto drain = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        slots[i].emplace(task(i));
      } catch (...) {
        std::lock_guard guard(failure_lock);
        if (!failure) failure = std::current_exception();
        next.store(count);
      }
    }
  };

  if (threads <= 1) {
    drain();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < threads; ++w) pool.emplace_back(drain);
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<Result> out;
  out.reserve(count);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace bjg
