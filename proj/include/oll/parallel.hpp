#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace oll {

// Static block partition over [0, count). Each index is processed exactly
// once and outputs must land in disjoint slots, so the result is identical
// to the serial run regardless of the job count.
inline void parallel_for(std::size_t count,
                         const std::function<void(std::size_t)>& fn,
                         int jobs = 0) {
  if (jobs <= 0) jobs = static_cast<int>(std::thread::hardware_concurrency());
  if (jobs <= 1 || count < 64) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  const std::size_t njobs = std::min<std::size_t>(static_cast<std::size_t>(jobs), count);
  const std::size_t chunk = (count + njobs - 1) / njobs;
  std::vector<std::thread> pool;
  pool.reserve(njobs);
  for (std::size_t t = 0; t < njobs; ++t) {
    const std::size_t lo = t * chunk;
    const std::size_t hi = std::min(count, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&fn, lo, hi] {
      for (std::size_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace oll
