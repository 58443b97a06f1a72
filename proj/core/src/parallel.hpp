#pragma once

#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace ordslope::detail {

// Worker cap: ORDSLOPE_THREADS if set (values < 1 clamp to 1), else hardware
// concurrency.
inline int max_threads() {
  if (const char* env = std::getenv("ORDSLOPE_THREADS")) {
    try {
      int v = std::stoi(env);
      return v < 1 ? 1 : v;
    } catch (...) {
      return 1;
    }
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs fn(i) for i in [0, count) on up to max_threads() workers in contiguous
// chunks.  fn must only write to index-i slots, so results are deterministic
// regardless of the thread count.  The first exception thrown is rethrown.
template <class Fn>
void parallel_for(int count, Fn&& fn) {
  if (count <= 0) return;
  int workers = max_threads();
  if (workers > count) workers = count;
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
  int chunk = (count + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    int lo = w * chunk;
    int hi = lo + chunk < count ? lo + chunk : count;
    if (lo >= hi) break;
    pool.emplace_back([&, w, lo, hi] {
      try {
        for (int i = lo; i < hi; ++i) fn(i);
      } catch (...) {
        errors[static_cast<std::size_t>(w)] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace ordslope::detail
