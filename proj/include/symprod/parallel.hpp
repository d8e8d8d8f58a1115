#ifndef SYMPROD_PARALLEL_HPP
#define SYMPROD_PARALLEL_HPP

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace symprod {

/// Worker count: hardware concurrency, capped by SYMPROD_THREADS when set.
inline unsigned thread_count() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char *env = std::getenv("SYMPROD_THREADS")) {
    long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1)
      n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return n;
}

/// Calls body(block, begin, end) over contiguous blocks of [0, count). Block
/// boundaries depend only on count and the worker count; callers that merge
/// per-block results with order-independent reductions stay deterministic.
template <typename Body> void parallel_blocks(std::size_t count, Body &&body) {
  const std::size_t workers = std::min<std::size_t>(thread_count(), std::max<std::size_t>(count, 1));
  if (workers <= 1) {
    body(std::size_t{0}, std::size_t{0}, count);
    return;
  }
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::mutex guard;
  const std::size_t chunk = (count + workers - 1) / workers;
  for (std::size_t b = 0; b < workers; ++b) {
    std::size_t lo = b * chunk, hi = std::min(count, lo + chunk);
    pool.emplace_back([&, b, lo, hi] {
      try {
        body(b, lo, hi);
      } catch (...) {
        std::lock_guard lock(guard);
        if (!error)
          error = std::current_exception();
      }
    });
  }
  for (auto &t : pool)
    t.join();
  if (error)
    std::rethrow_exception(error);
}

inline std::size_t block_count(std::size_t count) {
  return std::min<std::size_t>(thread_count(), std::max<std::size_t>(count, 1));
}

} // namespace symprod

#endif // SYMPROD_PARALLEL_HPP
