#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "gconn/dset.hpp"
#include "gconn/forest.hpp"
#include "gconn/graph.hpp"
#include "gconn/parallel.hpp"

// Sampling kernels. Each one runs on a make_set labeling, leaves a forest
// with every vertex pointing directly at its root, and may record the
// edges that merged two trees into a ForestEdges.

namespace gconn {

enum class KOutMode { FirstK, FirstPlusRandom };

struct SampleOptions {
  int workers = 1;
  std::uint64_t seed = 1;
  InspectionCounter* inspections = nullptr;
  ForestEdges* forest = nullptr;
};

struct SampleInfo {
  // BFS only: the traversal source and the vertex count it reached.
  vid_t bfs_source = kUninitialized;
  vid_t bfs_reached = 0;
};

namespace detail {

inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct RecordLink {
  ForestEdges* forest;
  vid_t u, v;
  void operator()(vid_t loser) const {
    if (forest) forest->slots[loser] = Edge{u, v};
  }
};

inline void add(const SampleOptions& opt, std::uint64_t n) {
  if (opt.inspections) opt.inspections->add(n);
}

}  // namespace detail

/// k-out sampling through `uf`. FirstK unions the first min(k, deg) edges
/// of every vertex; FirstPlusRandom unions the first edge and k - 1 edges
/// picked uniformly (with replacement) from the rest of the list.
inline void kout_sample(const Graph& g, UnionFind& uf, int k, KOutMode mode,
                        const SampleOptions& opt = {}) {
  if (k < 1) throw ConfigError("k-out sampling needs k >= 1");
  const vid_t n = g.num_vertices();
  PerWorker<std::uint64_t> seen(opt.workers);
  parallel_for(vid_t{0}, n, opt.workers, [&](vid_t v) {
    const auto nbrs = g.neighbors(v);
    const std::size_t deg = nbrs.size();
    if (deg == 0) return;
    const auto kk = static_cast<std::size_t>(k);
    if (mode == KOutMode::FirstK || deg <= kk) {
      const std::size_t take = std::min(kk, deg);
      for (std::size_t j = 0; j < take; ++j)
        uf.unite(v, nbrs[j], detail::RecordLink{opt.forest, v, nbrs[j]});
      seen.local() += take;
      return;
    }
    uf.unite(v, nbrs[0], detail::RecordLink{opt.forest, v, nbrs[0]});
    for (std::size_t j = 1; j < kk; ++j) {
      const std::uint64_t r = detail::mix64(opt.seed ^ detail::mix64((std::uint64_t{v} << 8) | j));
      const vid_t w = nbrs[1 + r % (deg - 1)];
      uf.unite(v, w, detail::RecordLink{opt.forest, v, w});
    }
    seen.local() += kk;
  }, 256);
  detail::add(opt, seen.sum());
  compress_all(uf.parents(), opt.workers);
}

inline void kout_sample(const Graph& g, Labels& labels, const UnionConfig& cfg, int k, KOutMode mode,
                        const SampleOptions& opt = {}) {
  UnionFind uf(labels, cfg, opt.seed);
  kout_sample(g, uf, k, mode, opt);
}

/// Two-phase hook-and-compress sampling. Phase 1 points every vertex at
/// min(v, first neighbor) with plain writes; phase 2 unions the first N
/// edges of every vertex that is still a root.
inline void hb_sample(const Graph& g, UnionFind& uf, int edges_per_root,
                      const SampleOptions& opt = {}) {
  if (edges_per_root < 1) throw ConfigError("HB sampling needs N >= 1");
  const vid_t n = g.num_vertices();
  Labels& p = uf.parents();
  PerWorker<std::uint64_t> seen(opt.workers);
  parallel_for(vid_t{0}, n, opt.workers, [&](vid_t v) {
    if (g.degree(v) == 0) return;
    const vid_t w = g.neighbors(v)[0];
    seen.local() += 1;
    if (w < v) {
      atomic_store(p[v], w);
      if (opt.forest) opt.forest->slots[v] = Edge{v, w};
    }
  }, 2048);

  std::vector<vid_t> roots;
  for (vid_t v = 0; v < n; ++v)
    if (p[v] == v && g.degree(v) > 0) roots.push_back(v);

  const auto cap = static_cast<std::size_t>(edges_per_root);
  parallel_for(std::size_t{0}, roots.size(), opt.workers, [&](std::size_t i) {
    const vid_t v = roots[i];
    const auto nbrs = g.neighbors(v);
    const std::size_t take = std::min(cap, nbrs.size());
    for (std::size_t j = 0; j < take; ++j)
      uf.unite(v, nbrs[j], detail::RecordLink{opt.forest, v, nbrs[j]});
    seen.local() += take;
  }, 256);
  detail::add(opt, seen.sum());
  compress_all(p, opt.workers);
}

inline void hb_sample(const Graph& g, Labels& labels, const UnionConfig& cfg, int edges_per_root,
                      const SampleOptions& opt = {}) {
  UnionFind uf(labels, cfg, opt.seed);
  hb_sample(g, uf, edges_per_root, opt);
}

/// Picks the highest-degree vertex among `probes` seeded uniform picks
/// (ties toward the smaller id).
inline vid_t pick_bfs_source(const Graph& g, int probes, std::uint64_t seed) {
  const vid_t n = g.num_vertices();
  if (n == 0) return kUninitialized;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<vid_t> pick(0, n - 1);
  vid_t best = pick(rng);
  for (int i = 1; i < probes; ++i) {
    const vid_t c = pick(rng);
    if (g.degree(c) > g.degree(best) || (g.degree(c) == g.degree(best) && c < best)) best = c;
  }
  return best;
}

/// Level-synchronous BFS from a probed high-degree source. Every reached
/// vertex is labeled with the minimum id m of the reached set; the BFS
/// tree, re-rooted at m, is recorded when a forest is requested.
inline SampleInfo bfs_sample(const Graph& g, Labels& labels, int probes, const SampleOptions& opt = {}) {
  if (probes < 1) throw ConfigError("BFS sampling needs at least one probe");
  SampleInfo info;
  const vid_t n = g.num_vertices();
  if (n == 0) return info;
  const vid_t s = pick_bfs_source(g, probes, opt.seed);
  info.bfs_source = s;

  std::vector<vid_t> parent(n, kUninitialized);
  parent[s] = s;
  std::vector<vid_t> frontier{s}, reached{s};
  PerWorker<std::uint64_t> seen(opt.workers);
  while (!frontier.empty()) {
    PerWorker<std::vector<vid_t>> next(opt.workers);
    parallel_for(std::size_t{0}, frontier.size(), opt.workers, [&](std::size_t i) {
      const vid_t u = frontier[i];
      const auto nbrs = g.neighbors(u);
      seen.local() += nbrs.size();
      for (vid_t v : nbrs)
        if (atomic_load(parent[v], std::memory_order_relaxed) == kUninitialized &&
            cas(parent[v], kUninitialized, u))
          next.local().push_back(v);
    }, 64);
    frontier.clear();
    next.for_each([&](std::vector<vid_t>& l) { frontier.insert(frontier.end(), l.begin(), l.end()); });
    reached.insert(reached.end(), frontier.begin(), frontier.end());
  }
  detail::add(opt, seen.sum());
  info.bfs_reached = static_cast<vid_t>(reached.size());

  const vid_t m = *std::min_element(reached.begin(), reached.end());
  parallel_for(std::size_t{0}, reached.size(), opt.workers,
               [&](std::size_t i) { labels[reached[i]] = m; }, 2048);

  if (opt.forest) {
    auto& slots = opt.forest->slots;
    for (vid_t x : reached)
      if (x != s) slots[x] = Edge{x, parent[x]};
    // Reverse the tree path m -> s so that m becomes the root.
    vid_t x = m;
    std::optional<Edge> carry;
    while (x != s) {
      const vid_t up = parent[x];
      const std::optional<Edge> e = slots[x];
      slots[x] = carry;
      carry = e;
      x = up;
    }
    slots[s] = carry;
  }
  return info;
}

/// Most frequent label of a compressed labeling; ties go to the smaller
/// label. Returns labels.size() for an empty labeling.
inline vid_t most_frequent_label(const Labels& labels, int workers = 1,
                                 std::uint64_t* frequency = nullptr) {
  const auto n = static_cast<vid_t>(labels.size());
  if (frequency) *frequency = 0;
  if (n == 0) return n;
  std::vector<std::uint32_t> hist(n, 0);
  parallel_for(vid_t{0}, n, workers, [&](vid_t v) {
    const vid_t l = labels[v];
    if (l < n) std::atomic_ref<std::uint32_t>(hist[l]).fetch_add(1, std::memory_order_relaxed);
  }, 4096);
  vid_t best = 0;
  for (vid_t l = 1; l < n; ++l)
    if (hist[l] > hist[best]) best = l;
  if (frequency) *frequency = hist[best];
  return best;
}

}  // namespace gconn
