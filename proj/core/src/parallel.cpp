#include "rsl/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace rsl {

namespace {

std::atomic<int> g_override{0};

int default_threads() {
  if (const char* env = std::getenv("RSL_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace

int thread_count() {
  const int o = g_override.load(std::memory_order_relaxed);
  return o >= 1 ? o : default_threads();
}

void set_thread_count(int n) { g_override.store(n, std::memory_order_relaxed); }

void parallel_for_blocks(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body) {
  if (n == 0) return;
  const int workers = thread_count();
  if (workers <= 1 || n < 2) {
    body(0, n);
    return;
  }
  // Fixed block size independent of the worker count keeps the work
  // decomposition (and thus any per-block state) deterministic.
  const std::size_t block = (n + 255) / 256 < 1 ? 1 : (n + 255) / 256;
  std::atomic<std::size_t> next{0};
  auto run = [&] {
    for (;;) {
      const std::size_t b = next.fetch_add(1, std::memory_order_relaxed);
      const std::size_t begin = b * block;
      if (begin >= n) return;
      const std::size_t end = begin + block < n ? begin + block : n;
      body(begin, end);
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers) - 1);
  for (int t = 1; t < workers; ++t) pool.emplace_back(run);
  run();
  for (auto& th : pool) th.join();
}

}  // namespace rsl
