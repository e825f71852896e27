#include "metawave/parallel.hpp"

#include <atomic>

namespace metawave {

namespace {
std::atomic<unsigned int> g_workers{0};  // 0 = use hardware concurrency
}

unsigned int worker_threads() {
  const unsigned int configured = g_workers.load(std::memory_order_relaxed);
  if (configured > 0) return configured;
  const unsigned int hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

void set_worker_threads(unsigned int n) {
  g_workers.store(n, std::memory_order_relaxed);
}

}  // namespace metawave
