#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <random>
#include <thread>
#include <vector>

namespace wavelab {

/// Per-worker generator derived from a root seed; the same (root, worker)
/// pair always yields the same stream.
inline std::mt19937_64 worker_rng(std::uint64_t root_seed, std::uint64_t worker) {
  std::seed_seq seq{static_cast<std::uint32_t>(root_seed), static_cast<std::uint32_t>(root_seed >> 32),
                    static_cast<std::uint32_t>(worker), 0x9e3779b9u};
  return std::mt19937_64(seq);
}

inline unsigned default_worker_count() {
  return std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
}

/// Splits [0, n) into `workers` contiguous chunks and runs body(worker, begin, end)
/// on separate threads. The chunking depends only on n and workers.
inline void parallel_chunks(std::size_t n, unsigned workers,
                            const std::function<void(unsigned, std::size_t, std::size_t)>& body) {
  workers = std::max(1u, workers);
  std::vector<std::thread> pool;
  const std::size_t chunk = (n + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t begin = std::min(n, w * chunk);
    const std::size_t end = std::min(n, begin + chunk);
    pool.emplace_back(body, w, begin, end);
  }
  for (auto& t : pool) t.join();
}

}  // namespace wavelab
