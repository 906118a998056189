#pragma once

#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace sosvol {

/// Runs fn(i) for i in [0, count) on up to `threads` workers. Each index is
/// processed exactly once and the body must write only to its own slot, so
/// results never depend on the partition. threads <= 1 runs serially;
/// threads == 0 uses the hardware count.
inline void parallel_for(long count, int threads, const std::function<void(long)>& fn) {
  if (threads == 0) threads = static_cast<int>(std::thread::hardware_concurrency());
  if (threads <= 1 || count <= 1) {
    for (long i = 0; i < count; ++i) fn(i);
    return;
  }
  const int workers = static_cast<int>(std::min<long>(threads, count));
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w]() {
      try {
        for (long i = w; i < count; i += workers) fn(i);
      } catch (...) {
        errors[static_cast<std::size_t>(w)] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace sosvol
