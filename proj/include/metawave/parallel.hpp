#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace metawave {

// Number of worker threads used by parallel sweeps.  Defaults to the
// hardware concurrency; settable once from the command line.
unsigned int worker_threads();
void set_worker_threads(unsigned int n);

// Run body(i) for i in [0, count) across the worker threads.  Work is
// partitioned into fixed contiguous blocks, so any reduction performed in
// index order by the caller is independent of the thread count.
inline void parallel_for(std::size_t count,
                         const std::function<void(std::size_t)>& body) {
  const std::size_t threads = std::max<std::size_t>(
      1, std::min<std::size_t>(worker_threads(), count));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  const std::size_t chunk = (count + threads - 1) / threads;
  for (std::size_t t = 0; t < threads; ++t) {
    const std::size_t begin = t * chunk;
    const std::size_t end = std::min(count, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&body, begin, end] {
      for (std::size_t i = begin; i < end; ++i) body(i);
    });
  }
  for (std::thread& worker : pool) worker.join();
}

}  // namespace metawave
