#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace qic::parallel {

// Fixed chunk size. Chunk boundaries depend only on the problem size, never
// on the thread count, so reductions combined in chunk order give the same
// result serial or parallel.
inline constexpr std::size_t kChunkSize = std::size_t(1) << 16;

namespace detail {
inline std::atomic<unsigned>& max_threads_slot() {
  static std::atomic<unsigned> v{0};  // 0 = use hardware_concurrency
  return v;
}
}  // namespace detail

inline unsigned max_threads() {
  unsigned v = detail::max_threads_slot().load(std::memory_order_relaxed);
  if (v == 0) {
    v = std::thread::hardware_concurrency();
    if (v == 0) v = 1;
  }
  return std::min(v, 64u);
}

inline void set_max_threads(unsigned n) {
  detail::max_threads_slot().store(n, std::memory_order_relaxed);
}

// Scoped thread-count override, used by tests to compare serial and
// parallel execution of the same kernel.
struct ThreadLimitGuard {
  explicit ThreadLimitGuard(unsigned n) : saved_(detail::max_threads_slot().load()) {
    set_max_threads(n);
  }
  ~ThreadLimitGuard() { detail::max_threads_slot().store(saved_); }
  ThreadLimitGuard(const ThreadLimitGuard&) = delete;
  ThreadLimitGuard& operator=(const ThreadLimitGuard&) = delete;

 private:
  unsigned saved_;
};

// Runs f(chunk_index, begin, end) over [0, n) split into kChunkSize chunks.
// Chunks are claimed from an atomic counter; each index is visited exactly
// once and chunks never overlap, so element-wise writes need no locking.
template <class F>
void for_each_chunk(std::size_t n, F&& f) {
  if (n == 0) return;
  const std::size_t chunks = (n + kChunkSize - 1) / kChunkSize;
  const unsigned threads = static_cast<unsigned>(
      std::min<std::size_t>(max_threads(), chunks));
  if (threads <= 1) {
    for (std::size_t c = 0; c < chunks; ++c) {
      const std::size_t begin = c * kChunkSize;
      f(c, begin, std::min(begin + kChunkSize, n));
    }
    return;
  }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t c = next.fetch_add(1, std::memory_order_relaxed);
      if (c >= chunks) return;
      const std::size_t begin = c * kChunkSize;
      f(c, begin, std::min(begin + kChunkSize, n));
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(threads - 1);
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
}

// Chunked reduction: per-chunk partial results are combined in chunk index
// order, independent of the thread schedule.
template <class F>
double reduce_chunks(std::size_t n, F&& partial_of_range) {
  if (n == 0) return 0.0;
  const std::size_t chunks = (n + kChunkSize - 1) / kChunkSize;
  std::vector<double> partials(chunks, 0.0);
  for_each_chunk(n, [&](std::size_t c, std::size_t begin, std::size_t end) {
    partials[c] = partial_of_range(begin, end);
  });
  double total = 0.0;
  for (double p : partials) total += p;
  return total;
}

}  // namespace qic::parallel
