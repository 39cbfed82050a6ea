#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "gconn/parallel.hpp"
#include "gconn/types.hpp"

// Concurrent disjoint-set kernels. Parents live in a plain vector accessed
// through word-sized atomics; every union links a root with a larger id
// under a vertex with a smaller id (except Union-JTB, which orders roots by
// random rank), so parent chains are strictly decreasing and acyclic.

namespace gconn {

using Labels = std::vector<vid_t>;

enum class UnionKind { Async, Hooks, Early, RemLock, RemCAS, JTB };
enum class FindKind { Naive, AtomicSplit, AtomicHalve, Compress, TwoTrySplit };
enum class SpliceKind { None, SplitOne, HalveOne, SpliceAtomic };

struct UnionConfig {
  UnionKind unite = UnionKind::Async;
  FindKind find = FindKind::Naive;
  SpliceKind splice = SpliceKind::None;
  friend bool operator==(const UnionConfig&, const UnionConfig&) = default;
};

inline const char* name(UnionKind k) {
  switch (k) {
    case UnionKind::Async: return "async";
    case UnionKind::Hooks: return "hooks";
    case UnionKind::Early: return "early";
    case UnionKind::RemLock: return "rem_lock";
    case UnionKind::RemCAS: return "rem_cas";
    case UnionKind::JTB: return "jtb";
  }
  return "?";
}

inline const char* name(FindKind k) {
  switch (k) {
    case FindKind::Naive: return "naive";
    case FindKind::AtomicSplit: return "split";
    case FindKind::AtomicHalve: return "halve";
    case FindKind::Compress: return "compress";
    case FindKind::TwoTrySplit: return "two_try";
  }
  return "?";
}

inline const char* name(SpliceKind k) {
  switch (k) {
    case SpliceKind::None: return "none";
    case SpliceKind::SplitOne: return "split_one";
    case SpliceKind::HalveOne: return "halve_one";
    case SpliceKind::SpliceAtomic: return "splice";
  }
  return "?";
}

inline bool is_rem(UnionKind k) { return k == UnionKind::RemLock || k == UnionKind::RemCAS; }

/// The supported union x find x splice matrix:
///   Async, Hooks, Early  x {Naive, AtomicSplit, AtomicHalve, Compress} x None
///   RemLock, RemCAS      x {Naive, AtomicSplit, AtomicHalve} x {SplitOne, HalveOne, SpliceAtomic}
///   JTB                  x {Naive, TwoTrySplit} x None
inline bool valid_combination(const UnionConfig& cfg) {
  const bool basic_find = cfg.find == FindKind::Naive || cfg.find == FindKind::AtomicSplit ||
                          cfg.find == FindKind::AtomicHalve;
  switch (cfg.unite) {
    case UnionKind::Async:
    case UnionKind::Hooks:
    case UnionKind::Early:
      return (basic_find || cfg.find == FindKind::Compress) && cfg.splice == SpliceKind::None;
    case UnionKind::RemLock:
    case UnionKind::RemCAS:
      return basic_find && cfg.splice != SpliceKind::None;
    case UnionKind::JTB:
      return (cfg.find == FindKind::Naive || cfg.find == FindKind::TwoTrySplit) &&
             cfg.splice == SpliceKind::None;
  }
  return false;
}

inline std::vector<UnionConfig> all_union_configs() {
  std::vector<UnionConfig> out;
  for (auto u : {UnionKind::Async, UnionKind::Hooks, UnionKind::Early, UnionKind::RemLock,
                 UnionKind::RemCAS, UnionKind::JTB})
    for (auto f : {FindKind::Naive, FindKind::AtomicSplit, FindKind::AtomicHalve,
                   FindKind::Compress, FindKind::TwoTrySplit})
      for (auto s : {SpliceKind::None, SpliceKind::SplitOne, SpliceKind::HalveOne,
                     SpliceKind::SpliceAtomic})
        if (valid_combination({u, f, s})) out.push_back({u, f, s});
  return out;
}

inline std::string to_string(const UnionConfig& cfg) {
  std::string s = std::string(name(cfg.unite)) + "+" + name(cfg.find);
  if (cfg.splice != SpliceKind::None) s += std::string("+") + name(cfg.splice);
  return s;
}

inline Labels make_set(vid_t n) {
  Labels p(n);
  for (vid_t v = 0; v < n; ++v) p[v] = v;
  return p;
}

// ---------------------------------------------------------------------------
// Find rules

inline vid_t find_naive(vid_t u, const Labels& p) {
  vid_t v = u;
  for (vid_t next = atomic_load(p[v]); next != v; next = atomic_load(p[v])) v = next;
  return v;
}

// Two passes: locate the root, then point every vertex on the path at it.
// Path writes are CASes so a concurrent decrease is never overwritten.
inline vid_t find_compress(vid_t u, Labels& p) {
  vid_t r = u;
  if (atomic_load(p[r]) == r) return r;
  for (vid_t next = atomic_load(p[r]); next != r; next = atomic_load(p[r])) r = next;
  for (vid_t j = atomic_load(p[u]); j > r; j = atomic_load(p[u])) {
    cas(p[u], j, r);
    u = j;
  }
  return r;
}

inline vid_t find_atomic_split(vid_t u, Labels& p) {
  while (true) {
    const vid_t v = atomic_load(p[u]);
    const vid_t w = atomic_load(p[v]);
    if (v == w) return v;
    cas(p[u], v, w);
    u = v;
  }
}

inline vid_t find_atomic_halve(vid_t u, Labels& p) {
  while (true) {
    const vid_t v = atomic_load(p[u]);
    const vid_t w = atomic_load(p[v]);
    if (v == w) return v;
    cas(p[u], v, w);
    u = atomic_load(p[u]);
  }
}

// Each vertex on the path gets two splitting attempts before the walk moves
// on to its (possibly new) parent.
inline vid_t find_two_try_split(vid_t u, Labels& p) {
  while (true) {
    for (int attempt = 0; attempt < 2; ++attempt) {
      const vid_t v = atomic_load(p[u]);
      const vid_t w = atomic_load(p[v]);
      if (v == w) return v;
      cas(p[u], v, w);
    }
    u = atomic_load(p[u]);
  }
}

inline vid_t find(FindKind kind, vid_t u, Labels& p) {
  switch (kind) {
    case FindKind::Naive: return find_naive(u, p);
    case FindKind::AtomicSplit: return find_atomic_split(u, p);
    case FindKind::AtomicHalve: return find_atomic_halve(u, p);
    case FindKind::Compress: return find_compress(u, p);
    case FindKind::TwoTrySplit: return find_two_try_split(u, p);
  }
  return find_naive(u, p);
}

// ---------------------------------------------------------------------------
// Splice rules, used by Rem's unions when r_u is not a root.

inline vid_t splice(SpliceKind kind, vid_t u, vid_t v, Labels& p) {
  switch (kind) {
    case SpliceKind::SplitOne:
    case SpliceKind::HalveOne: {
      const vid_t pu = atomic_load(p[u]);
      const vid_t gp = atomic_load(p[pu]);
      if (pu != gp) cas(p[u], pu, gp);
      return kind == SpliceKind::SplitOne ? pu : gp;
    }
    case SpliceKind::SpliceAtomic: {
      const vid_t pu = atomic_load(p[u]);
      const vid_t pv = atomic_load(p[v]);
      // Parents only decrease; never swing P[u] upward.
      if (pv < pu) cas(p[u], pu, pv);
      return pu;
    }
    case SpliceKind::None: break;
  }
  return atomic_load(p[u]);
}

// ---------------------------------------------------------------------------

// Per-vertex test-and-test-and-set locks.
class SpinLocks {
 public:
  explicit SpinLocks(std::size_t n = 0) : n_(n), flags_(std::make_unique<std::atomic<bool>[]>(n)) {}

  void lock(std::size_t i) {
    while (true) {
      if (!flags_[i].exchange(true, std::memory_order_acquire)) return;
      while (flags_[i].load(std::memory_order_relaxed)) cpu_relax();
    }
  }
  void unlock(std::size_t i) { flags_[i].store(false, std::memory_order_release); }
  std::size_t size() const { return n_; }

 private:
  std::size_t n_;
  std::unique_ptr<std::atomic<bool>[]> flags_;
};

struct NoLinkHook {
  void operator()(vid_t) const noexcept {}
};

/// A configured union-find over an externally owned parent array. Each
/// successful link calls on_link(r) exactly once, from the worker that
/// turned root r into a non-root.
class UnionFind {
 public:
  UnionFind(Labels& parents, UnionConfig cfg, std::uint64_t seed = 0x9e3779b97f4a7c15ULL)
      : p_(&parents), cfg_(cfg) {
    if (!valid_combination(cfg))
      throw ConfigError("invalid union-find combination: " + to_string(cfg));
    const std::size_t n = parents.size();
    if (cfg.unite == UnionKind::Hooks) hooks_.assign(n, static_cast<vid_t>(n));
    if (cfg.unite == UnionKind::RemLock) locks_ = SpinLocks(n);
    if (cfg.unite == UnionKind::JTB) {
      std::mt19937_64 rng(seed);
      ranks_.resize(n);
      for (auto& r : ranks_) r = static_cast<std::uint32_t>(rng());
    }
  }

  const UnionConfig& config() const { return cfg_; }
  Labels& parents() { return *p_; }
  const std::vector<vid_t>& hooks() const { return hooks_; }
  const std::vector<std::uint32_t>& ranks() const { return ranks_; }

  vid_t find(vid_t u) { return gconn::find(cfg_.find, u, *p_); }

  // Root of u without any writes.
  vid_t root(vid_t u) const { return find_naive(u, *p_); }

  template <typename OnLink = NoLinkHook>
  bool unite(vid_t u, vid_t v, OnLink&& on_link = {}) {
    switch (cfg_.unite) {
      case UnionKind::Async: return unite_async(u, v, on_link);
      case UnionKind::Hooks: return unite_hooks(u, v, on_link);
      case UnionKind::Early: return unite_early(u, v, on_link);
      case UnionKind::RemLock: return unite_rem_lock(u, v, on_link);
      case UnionKind::RemCAS: return unite_rem_cas(u, v, on_link);
      case UnionKind::JTB: return unite_jtb(u, v, on_link);
    }
    return false;
  }

  // (rank, id) order used by Union-JTB; the root with the larger key wins.
  bool jtb_less(vid_t a, vid_t b) const {
    return ranks_[a] != ranks_[b] ? ranks_[a] < ranks_[b] : a < b;
  }

 private:
  template <typename OnLink>
  bool unite_async(vid_t u, vid_t v, OnLink& on_link) {
    Labels& p = *p_;
    vid_t pu = find(u), pv = find(v);
    while (pu != pv) {
      if (pu < pv) std::swap(pu, pv);
      if (atomic_load(p[pu]) == pu && cas(p[pu], pu, pv)) {
        on_link(pu);
        return true;
      }
      pu = find(u);
      pv = find(v);
    }
    return false;
  }

  template <typename OnLink>
  bool unite_hooks(vid_t u, vid_t v, OnLink& on_link) {
    Labels& p = *p_;
    const auto unhooked = static_cast<vid_t>(p.size());
    vid_t pu = find(u), pv = find(v);
    while (pu != pv) {
      if (pu < pv) std::swap(pu, pv);
      if (atomic_load(p[pu]) == pu && cas(hooks_[pu], unhooked, pv)) {
        // The hook claim above orders this write; no one else links pu.
        atomic_store(p[pu], pv, std::memory_order_release);
        on_link(pu);
        return true;
      }
      pu = find(u);
      pv = find(v);
    }
    return false;
  }

  template <typename OnLink>
  bool unite_early(vid_t u, vid_t v, OnLink& on_link) {
    Labels& p = *p_;
    vid_t pu = u, pv = v;
    bool merged = false;
    while (pu != pv) {
      if (pu < pv) std::swap(pu, pv);
      if (atomic_load(p[pu]) == pu && cas(p[pu], pu, pv)) {
        on_link(pu);
        merged = true;
        break;
      }
      const vid_t z = atomic_load(p[pu]);
      const vid_t w = atomic_load(p[z]);
      if (z != w) cas(p[pu], z, w);
      pu = w;
    }
    if (cfg_.find != FindKind::Naive) {
      find(u);
      find(v);
    }
    return merged;
  }

  template <typename OnLink>
  bool unite_rem_lock(vid_t u, vid_t v, OnLink& on_link) {
    Labels& p = *p_;
    vid_t ru = u, rv = v;
    while (true) {
      vid_t pu = atomic_load(p[ru]);
      vid_t pv = atomic_load(p[rv]);
      if (pu == pv) break;
      if (pu < pv) {
        std::swap(ru, rv);
        std::swap(pu, pv);
      }
      if (ru == pu) {
        bool linked = false;
        locks_.lock(ru);
        const vid_t target = atomic_load(p[rv]);
        if (atomic_load(p[ru]) == ru && ru > target) {
          atomic_store(p[ru], target);
          on_link(ru);
          linked = true;
        }
        locks_.unlock(ru);
        if (linked) return true;
        // Re-validation failed: ru stopped being a root. Keep walking.
      } else {
        ru = splice(cfg_.splice, ru, rv, p);
      }
    }
    if (cfg_.find != FindKind::Naive) {
      find(u);
      find(v);
    }
    return false;
  }

  template <typename OnLink>
  bool unite_rem_cas(vid_t u, vid_t v, OnLink& on_link) {
    Labels& p = *p_;
    vid_t ru = u, rv = v;
    while (true) {
      vid_t pu = atomic_load(p[ru]);
      vid_t pv = atomic_load(p[rv]);
      if (pu == pv) break;
      if (pu < pv) {
        std::swap(ru, rv);
        std::swap(pu, pv);
      }
      if (ru == pu) {
        const vid_t target = atomic_load(p[rv]);
        if (target < ru && cas(p[ru], ru, target)) {
          on_link(ru);
          if (cfg_.find != FindKind::Naive) {
            find(u);
            find(v);
          }
          return true;
        }
      }
      ru = splice(cfg_.splice, ru, rv, p);
    }
    return false;
  }

  template <typename OnLink>
  bool unite_jtb(vid_t u, vid_t v, OnLink& on_link) {
    Labels& p = *p_;
    vid_t pu = find(u), pv = find(v);
    while (pu != pv) {
      if (jtb_less(pv, pu)) std::swap(pu, pv);
      if (atomic_load(p[pu]) == pu && cas(p[pu], pu, pv)) {
        on_link(pu);
        return true;
      }
      pu = find(u);
      pv = find(v);
    }
    return false;
  }

  Labels* p_;
  UnionConfig cfg_;
  std::vector<vid_t> hooks_;
  SpinLocks locks_;
  std::vector<std::uint32_t> ranks_;
};

// Points every vertex directly at its root.
inline void compress_all(Labels& p, int workers = 1) {
  parallel_for(vid_t{0}, static_cast<vid_t>(p.size()), workers, [&](vid_t v) {
    const vid_t r = find_naive(v, p);
    if (atomic_load(p[v]) != r) atomic_store(p[v], r);
  });
}

}  // namespace gconn
