#pragma once

#include <atomic>
#include <functional>
#include <thread>
#include <vector>

namespace hilbert {

// Index-parallel map. Work items write only to their own slot, and callers
// reduce in index order afterwards, so results are byte-stable across
// worker counts.
inline void parallel_for(int count, int workers, const std::function<void(int)>& fn) {
  if (workers <= 1 || count <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  auto run = [&] {
    for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
  };
  std::vector<std::thread> pool;
  int spawn = std::min(workers, count) - 1;
  pool.reserve(spawn);
  for (int t = 0; t < spawn; ++t) pool.emplace_back(run);
  run();
  for (auto& th : pool) th.join();
}

}  // namespace hilbert
