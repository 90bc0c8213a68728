#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace symchar {

// Deterministic parallel reduction: [0, count) is cut into fixed-size chunks,
// each chunk is mapped to a partial value by whichever worker grabs it, and
// the partials are folded in chunk order. The result is therefore identical
// for every thread count and schedule.
template <class T, class MapChunk, class Fold>
T chunked_reduce(std::size_t count, T init, MapChunk map_chunk, Fold fold,
                 int threads = 1, std::size_t chunk_size = 64) {
  if (count == 0) return init;
  if (chunk_size == 0) chunk_size = 1;
  std::size_t chunks = (count + chunk_size - 1) / chunk_size;
  auto run_chunk = [&](std::size_t ci) {
    std::size_t lo = ci * chunk_size;
    return map_chunk(lo, std::min(count, lo + chunk_size));
  };
  T acc = std::move(init);
  int workers = (int)std::min<std::size_t>(std::max(threads, 1), chunks);
  if (workers <= 1) {
    for (std::size_t ci = 0; ci < chunks; ++ci) acc = fold(std::move(acc), run_chunk(ci));
    return acc;
  }
  std::vector<std::optional<T>> parts(chunks);
  std::atomic<std::size_t> next{0};
  std::exception_ptr err;
  std::mutex err_mtx;
  auto work = [&] {
    try {
      for (std::size_t ci; (ci = next.fetch_add(1)) < chunks;) parts[ci] = run_chunk(ci);
    } catch (...) {
      std::lock_guard<std::mutex> lock(err_mtx);
      if (!err) err = std::current_exception();
      next.store(chunks);  // drain remaining work
    }
  };
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
  for (std::size_t ci = 0; ci < chunks; ++ci) acc = fold(std::move(acc), std::move(*parts[ci]));
  return acc;
}

}  // namespace symchar
