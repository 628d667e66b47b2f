#pragma once

// Deterministic reductions and a minimal fork-join helper.
//
// Every floating-point sum in the library goes through PairwiseSum: values
// are added sequentially in blocks of kPairwiseBlock, and finished blocks
// are merged like a binary counter. The result depends only on the order in
// which values are fed, never on how work was split across threads. Parallel
// callers compute per-chunk partial results into slots indexed by chunk and
// reduce the slots in index order afterwards.

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <span>
#include <thread>
#include <vector>

namespace wlpdisc {

inline constexpr std::size_t kPairwiseBlock = 128;

class PairwiseSum {
 public:
  void add(double value) {
    block_ += value;
    if (++in_block_ == kPairwiseBlock) {
      carry(block_);
      block_ = 0.0;
      in_block_ = 0;
    }
  }

  [[nodiscard]] double result() const {
    double total = block_;
    for (std::size_t level = 0; level < levels_.size(); ++level) {
      if (occupied_[level]) total = levels_[level] + total;
    }
    return total;
  }

 private:
  void carry(double value) {
    std::size_t level = 0;
    while (level < levels_.size() && occupied_[level]) {
      value = levels_[level] + value;
      occupied_[level] = false;
      ++level;
    }
    if (level == levels_.size()) {
      levels_.push_back(0.0);
      occupied_.push_back(false);
    }
    levels_[level] = value;
    occupied_[level] = true;
  }

  double block_ = 0.0;
  std::size_t in_block_ = 0;
  std::vector<double> levels_;
  std::vector<bool> occupied_;
};

[[nodiscard]] inline double pairwise_sum(std::span<const double> values) {
  PairwiseSum acc;
  for (double v : values) acc.add(v);
  return acc.result();
}

/// 0 means "use every hardware thread".
[[nodiscard]] inline unsigned resolve_threads(unsigned requested) {
  if (requested != 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1U : hw;
}

/// Calls body(i) for every i in [0, count), spreading indices over up to
/// `threads` workers. The body must write its result to a slot owned by i.
/// The first exception thrown by any body is rethrown on the caller.
template <class Body>
void parallel_for(std::size_t count, unsigned threads, Body&& body) {
  const std::size_t workers =
      std::min<std::size_t>(resolve_threads(threads), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= count) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(count, std::memory_order_relaxed);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (std::size_t t = 1; t < workers; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace wlpdisc
