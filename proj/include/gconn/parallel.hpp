#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <new>
#include <thread>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "gconn/types.hpp"

namespace gconn {

// Number of workers used when a caller does not say otherwise.
inline int default_workers() {
#ifdef _OPENMP
  return std::max(1, omp_get_max_threads());
#else
  return 1;
#endif
}

inline int worker_id() {
#ifdef _OPENMP
  return omp_get_thread_num();
#else
  return 0;
#endif
}

// Runs fn(i) for every i in [begin, end). With workers == 1 the iterations
// execute in increasing order on the calling thread, which is what the
// deterministic golden-trace tests rely on.
template <typename Index, typename Fn>
void parallel_for(Index begin, Index end, int workers, Fn&& fn,
                  std::int64_t grain = 512) {
  if (begin >= end) return;
  if (workers <= 1) {
    for (Index i = begin; i < end; ++i) fn(i);
    return;
  }
#ifdef _OPENMP
  const auto lo = static_cast<std::int64_t>(begin);
  const auto hi = static_cast<std::int64_t>(end);
#pragma omp parallel for num_threads(workers) schedule(dynamic, grain)
  for (std::int64_t i = lo; i < hi; ++i) fn(static_cast<Index>(i));
#else
  (void)grain;
  for (Index i = begin; i < end; ++i) fn(i);
#endif
}

// Runs body(worker) once on each of `workers` threads.
template <typename Fn>
void parallel_region(int workers, Fn&& body) {
  if (workers <= 1) {
    body(0);
    return;
  }
#ifdef _OPENMP
#pragma omp parallel num_threads(workers)
  body(omp_get_thread_num());
#else
  body(0);
#endif
}

inline void cpu_relax() { std::this_thread::yield(); }

// Word-level atomic access to plain arrays. Label arrays stay ordinary
// std::vector<vid_t> so they keep value semantics outside of kernels.
template <typename T>
inline T atomic_load(const T& slot,
                     std::memory_order order = std::memory_order_acquire) {
  return std::atomic_ref<T>(const_cast<T&>(slot)).load(order);
}

template <typename T>
inline void atomic_store(T& slot, T value,
                         std::memory_order order = std::memory_order_release) {
  std::atomic_ref<T>(slot).store(value, order);
}

template <typename T>
inline bool cas(T& slot, T expected, T desired) {
  return std::atomic_ref<T>(slot).compare_exchange_strong(
      expected, desired, std::memory_order_acq_rel, std::memory_order_acquire);
}

// Lowers slot to value if value is smaller. Returns true if it wrote.
template <typename T>
inline bool write_min(T& slot, T value) {
  std::atomic_ref<T> ref(slot);
  T cur = ref.load(std::memory_order_acquire);
  while (value < cur) {
    if (ref.compare_exchange_weak(cur, value, std::memory_order_acq_rel,
                                  std::memory_order_acquire))
      return true;
  }
  return false;
}

// One accumulator per worker, padded to avoid false sharing; summed after
// the parallel region that filled it.
template <typename T>
class PerWorker {
 public:
  explicit PerWorker(int workers = 1)
      : slots_(static_cast<std::size_t>(std::max(1, workers))) {}

  T& local() { return slots_[static_cast<std::size_t>(worker_id()) % slots_.size()].value; }

  T sum() const {
    T total{};
    for (const auto& s : slots_) total += s.value;
    return total;
  }

  template <typename Fn>
  void for_each(Fn&& fn) {
    for (auto& s : slots_) fn(s.value);
  }

 private:
  struct alignas(64) Slot {
    T value{};
  };
  std::vector<Slot> slots_;
};

// Counts adjacency reads made by sampling and finish kernels. Compiled to
// no-ops unless GCONN_INSTRUMENT is defined.
class InspectionCounter {
 public:
  explicit InspectionCounter(int workers = 1) : counts_(workers) {}

  static constexpr bool enabled() {
#ifdef GCONN_INSTRUMENT
    return true;
#else
    return false;
#endif
  }

  void add([[maybe_unused]] std::uint64_t n) {
#ifdef GCONN_INSTRUMENT
    counts_.local() += n;
#endif
  }

  std::uint64_t total() const { return counts_.sum(); }

 private:
  PerWorker<std::uint64_t> counts_;
};

}  // namespace gconn
