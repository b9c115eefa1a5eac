#ifndef CONDKIN_PARALLEL_HPP
#define CONDKIN_PARALLEL_HPP

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace condkin::detail {

// Runs body(begin, end) over disjoint chunks of [0, count). Each index is
// owned by exactly one chunk, so writes are race-free and results do not
// depend on the thread count.
template <typename F>
void parallel_for(std::size_t count, F&& body) {
  const std::size_t hw = std::max<std::size_t>(1, std::thread::hardware_concurrency());
  const std::size_t min_chunk = 2048;
  if (hw == 1 || count <= min_chunk) {
    body(std::size_t{0}, count);
    return;
  }
  const std::size_t threads = std::min(hw, (count + min_chunk - 1) / min_chunk);
  const std::size_t chunk = (count + threads - 1) / threads;
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (std::size_t t = 0; t < threads; ++t) {
    const std::size_t begin = t * chunk;
    const std::size_t end = std::min(count, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&body, begin, end] { body(begin, end); });
  }
  for (auto& th : pool) th.join();
}

}  // namespace condkin::detail

#endif
