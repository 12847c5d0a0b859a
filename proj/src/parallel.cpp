#include "qhbound/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace qhbound {

unsigned worker_count(unsigned requested) {
  unsigned cap = 0;
  if (const char* env = std::getenv("QHBOUND_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) cap = static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  unsigned n = requested;
  if (n == 0) n = cap != 0 ? cap : std::max(1u, std::thread::hardware_concurrency());
  if (cap != 0) n = std::min(n, cap);
  return std::max(1u, n);
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body, unsigned threads) {
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(worker_count(threads), n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex guard;
  std::size_t failed_at = n;
  std::exception_ptr failure;
  auto run = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(guard);
        if (i < failed_at) {
          failed_at = i;
          failure = std::current_exception();
        }
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < workers; ++t) pool.emplace_back(run);
  run();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace qhbound
