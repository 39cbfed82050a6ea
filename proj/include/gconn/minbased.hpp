#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gconn/dset.hpp"
#include "gconn/forest.hpp"
#include "gconn/graph.hpp"
#include "gconn/parallel.hpp"

// Round-synchronous min-based finishers: Shiloach-Vishkin, the Liu-Tarjan
// rule family, Stergiou and label propagation. All of them only ever lower
// a label, and labels are vertex ids of the same component, so the final
// root of every chain is a valid component representative.

namespace gconn {

enum class LTConnect { Connect, ParentConnect, ExtendedConnect };
enum class LTUpdate { Update, RootUpdate };
enum class LTShortcut { Shortcut, FullShortcut };

struct LTVariant {
  LTConnect connect = LTConnect::ParentConnect;
  LTUpdate update = LTUpdate::RootUpdate;
  LTShortcut shortcut = LTShortcut::Shortcut;
  bool alter = false;
  friend bool operator==(const LTVariant&, const LTVariant&) = default;
};

inline std::string name(const LTVariant& v) {
  std::string s;
  s += v.connect == LTConnect::Connect ? 'C' : v.connect == LTConnect::ParentConnect ? 'P' : 'E';
  s += v.update == LTUpdate::Update ? 'U' : 'R';
  s += v.shortcut == LTShortcut::Shortcut ? 'S' : 'F';
  if (v.alter) s += 'A';
  return s;
}

/// The sixteen named rule combinations, in the order CUSA ... EUF.
inline const std::array<LTVariant, 16>& all_lt_variants() {
  using C = LTConnect;
  using U = LTUpdate;
  using S = LTShortcut;
  static const std::array<LTVariant, 16> variants = {{
      {C::Connect, U::Update, S::Shortcut, true},
      {C::Connect, U::RootUpdate, S::Shortcut, true},
      {C::ParentConnect, U::Update, S::Shortcut, true},
      {C::ParentConnect, U::RootUpdate, S::Shortcut, true},
      {C::ParentConnect, U::Update, S::Shortcut, false},
      {C::ParentConnect, U::RootUpdate, S::Shortcut, false},
      {C::ExtendedConnect, U::Update, S::Shortcut, true},
      {C::ExtendedConnect, U::Update, S::Shortcut, false},
      {C::Connect, U::Update, S::FullShortcut, true},
      {C::Connect, U::RootUpdate, S::FullShortcut, true},
      {C::ParentConnect, U::Update, S::FullShortcut, true},
      {C::ParentConnect, U::RootUpdate, S::FullShortcut, true},
      {C::ParentConnect, U::Update, S::FullShortcut, false},
      {C::ParentConnect, U::RootUpdate, S::FullShortcut, false},
      {C::ExtendedConnect, U::Update, S::FullShortcut, true},
      {C::ExtendedConnect, U::Update, S::FullShortcut, false},
  }};
  return variants;
}

inline bool is_valid(const LTVariant& v) {
  const auto& all = all_lt_variants();
  return std::find(all.begin(), all.end(), v) != all.end();
}

inline bool is_root_based(const LTVariant& v) { return v.update == LTUpdate::RootUpdate; }

inline std::optional<LTVariant> parse_lt_variant(std::string_view s) {
  std::string upper(s);
  for (auto& c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  for (const auto& v : all_lt_variants())
    if (name(v) == upper) return v;
  return std::nullopt;
}

/// Knobs shared by every round-based finisher.
struct RoundOptions {
  int workers = 1;
  // Vertices carrying this label are settled: their adjacency is never read.
  // Any value that is not a label (e.g. n) disables skipping.
  vid_t l_max = kUninitialized;
  InspectionCounter* inspections = nullptr;
  // Called after every round with the current labels.
  std::function<void(int round, const Labels&)> on_round;
  // When set, root hooks record their edge here (root-based finishers only).
  ForestEdges* forest = nullptr;
};

struct RoundStats {
  int rounds = 0;
  // Update-phase writes to vertices that were not roots.
  std::uint64_t nonroot_updates = 0;
};

namespace detail {

inline constexpr std::uint64_t kNoMessage = ~std::uint64_t{0};

inline std::uint64_t pack(vid_t value, std::uint64_t idx) {
  return (static_cast<std::uint64_t>(value) << 32) | idx;
}
inline vid_t packed_value(std::uint64_t key) { return static_cast<vid_t>(key >> 32); }
inline std::uint32_t packed_index(std::uint64_t key) { return static_cast<std::uint32_t>(key); }

// Lowers slot to key; reports whether the slot was empty before.
inline bool write_min_key(std::uint64_t& slot, std::uint64_t key, bool& was_empty) {
  std::atomic_ref<std::uint64_t> ref(slot);
  std::uint64_t cur = ref.load(std::memory_order_acquire);
  while (key < cur) {
    if (ref.compare_exchange_weak(cur, key, std::memory_order_acq_rel)) {
      was_empty = cur == kNoMessage;
      return true;
    }
  }
  return false;
}

inline void count(const RoundOptions& opt, std::uint64_t n) {
  if (opt.inspections) opt.inspections->add(n);
}

inline void check_round_budget(int rounds, std::size_t n) {
  if (static_cast<std::size_t>(rounds) > n + 2)
    throw Error("round-based finisher failed to converge within n rounds");
}

// Vertices a round-based kernel shortcuts: everything, or an explicit list.
struct VertexSet {
  vid_t n = 0;
  std::span<const vid_t> list;
  bool all = true;

  static VertexSet everything(vid_t n) { return {n, {}, true}; }
  static VertexSet only(std::span<const vid_t> vs) { return {0, vs, false}; }

  template <typename Fn>
  void for_each(int workers, Fn&& fn) const {
    if (all)
      parallel_for(vid_t{0}, n, workers, fn, 2048);
    else
      parallel_for(std::size_t{0}, list.size(), workers, [&](std::size_t i) { fn(list[i]); }, 2048);
  }
};

// Adjacency entries of a set of source vertices in a CSR graph.
struct CsrSource {
  const Graph& g;
  std::span<const vid_t> sources;

  template <typename Fn>
  void for_each(int workers, const RoundOptions& opt, Fn&& fn) const {
    PerWorker<std::uint64_t> seen(workers);
    parallel_for(std::size_t{0}, sources.size(), workers, [&](std::size_t i) {
      const vid_t u = sources[i];
      const eid_t base = g.offsets()[u];
      const auto nbrs = g.neighbors(u);
      for (std::size_t j = 0; j < nbrs.size(); ++j) fn(u, nbrs[j], base + j);
      seen.local() += nbrs.size();
    }, 64);
    count(opt, seen.sum());
  }

  Edge edge(eid_t idx) const {
    const auto& off = g.offsets();
    const auto it = std::upper_bound(off.begin(), off.end(), idx);
    return {static_cast<vid_t>(it - off.begin() - 1), g.targets()[idx]};
  }
};

struct CooSource {
  std::span<const Edge> edges;

  template <typename Fn>
  void for_each(int workers, const RoundOptions& opt, Fn&& fn) const {
    parallel_for(std::size_t{0}, edges.size(), workers,
                 [&](std::size_t i) { fn(edges[i].src, edges[i].dst, i); }, 1024);
    count(opt, edges.size());
  }

  Edge edge(eid_t idx) const { return edges[idx]; }
};

inline std::vector<vid_t> collect(PerWorker<std::vector<vid_t>>& lists) {
  std::vector<vid_t> out;
  lists.for_each([&](std::vector<vid_t>& l) { out.insert(out.end(), l.begin(), l.end()); });
  return out;
}

inline std::vector<vid_t> active_vertices(const Labels& labels, vid_t l_max, int workers) {
  (void)workers;
  std::vector<vid_t> active;
  for (vid_t v = 0; v < labels.size(); ++v)
    if (labels[v] != l_max) active.push_back(v);
  return active;
}

inline void require_forest_capacity(eid_t edges) {
  if (edges >= (eid_t{1} << 32))
    throw ConfigError("forest recording supports at most 2^32 edge entries");
}

// Shiloach-Vishkin over an arbitrary edge source. `prev` must equal
// `labels` on every vertex on entry; it is kept in sync on exit.
template <typename Source>
RoundStats shiloach_vishkin_core(const Source& src, eid_t edge_count, VertexSet universe,
                                 Labels& labels, Labels& prev, const RoundOptions& opt) {
  RoundStats stats;
  const int w = opt.workers;
  const bool forest = opt.forest != nullptr;
  if (forest) require_forest_capacity(edge_count);
  std::vector<std::uint64_t> hook;
  if (forest) hook.assign(labels.size(), kNoMessage);

  bool changed = true;
  while (changed) {
    ++stats.rounds;
    check_round_budget(stats.rounds, labels.size());
    std::atomic<bool> any{false};
    PerWorker<std::vector<vid_t>> written(w);
    src.for_each(w, opt, [&](vid_t u, vid_t v, eid_t idx) {
      // With forest recording, labels stay frozen for the round and hooks
      // are applied afterwards, so every read sees round-start roots.
      const vid_t pu = atomic_load(labels[u], std::memory_order_relaxed);
      const vid_t pv = atomic_load(labels[v], std::memory_order_relaxed);
      const vid_t lo = std::min(pu, pv), hi = std::max(pu, pv);
      if (lo == hi || atomic_load(prev[hi], std::memory_order_relaxed) != hi) return;
      bool first = false;
      if (forest) {
        if (write_min_key(hook[hi], pack(lo, idx), first) && first) written.local().push_back(hi);
      } else if (write_min(labels[hi], lo)) {
        if (!universe.all) written.local().push_back(hi);
      }
      any.store(true, std::memory_order_relaxed);
    });
    changed = any.load();

    const std::vector<vid_t> touched = collect(written);
    if (forest) {
      parallel_for(std::size_t{0}, touched.size(), w, [&](std::size_t i) {
        const vid_t h = touched[i];
        const std::uint64_t key = hook[h];
        hook[h] = kNoMessage;
        labels[h] = packed_value(key);
        opt.forest->slots[h] = src.edge(packed_index(key));
      });
    }
    auto shortcut = [&](vid_t v) {
      const vid_t r = find_naive(v, labels);
      if (atomic_load(labels[v], std::memory_order_relaxed) != r) atomic_store(labels[v], r);
      atomic_store(prev[v], r, std::memory_order_relaxed);
    };
    universe.for_each(w, shortcut);
    if (!universe.all) parallel_for(std::size_t{0}, touched.size(), w, [&](std::size_t i) { shortcut(touched[i]); });
    if (opt.on_round) opt.on_round(stats.rounds, labels);
  }
  return stats;
}


// One Liu-Tarjan rule set over a working edge list. `orig` mirrors `work`
// when forest recording is on. `msg` is scratch of size |labels|, all
// kNoMessage on entry and on exit.
inline RoundStats liu_tarjan_core(std::vector<Edge> work, std::vector<Edge> orig,
                                  VertexSet universe, Labels& p, const LTVariant& var,
                                  std::vector<std::uint64_t>& msg, const RoundOptions& opt) {
  RoundStats stats;
  const int w = opt.workers;
  const bool forest = opt.forest != nullptr;
  if (forest) require_forest_capacity(work.size());
  PerWorker<std::uint64_t> nonroot(w);

  while (true) {
    ++stats.rounds;
    check_round_budget(stats.rounds, p.size());

    // Connect: gather the minimum message for every recipient. Parents are
    // read-only in this phase.
    PerWorker<std::vector<vid_t>> dirty(w);
    auto send = [&](vid_t to, vid_t value, std::size_t i) {
      if (value >= atomic_load(p[to], std::memory_order_relaxed)) return;
      bool first = false;
      if (write_min_key(msg[to], pack(value, forest ? i : 0), first) && first)
        dirty.local().push_back(to);
    };
    count(opt, work.size());
    parallel_for(std::size_t{0}, work.size(), w, [&](std::size_t i) {
      const vid_t a = work[i].src, b = work[i].dst;
      switch (var.connect) {
        case LTConnect::Connect:
          send(a, b, i);
          send(b, a, i);
          break;
        case LTConnect::ParentConnect: {
          const vid_t pa = atomic_load(p[a], std::memory_order_relaxed);
          const vid_t pb = atomic_load(p[b], std::memory_order_relaxed);
          send(pa, pb, i);
          send(pb, pa, i);
          break;
        }
        case LTConnect::ExtendedConnect: {
          const vid_t pa = atomic_load(p[a], std::memory_order_relaxed);
          const vid_t pb = atomic_load(p[b], std::memory_order_relaxed);
          const vid_t lo = std::min(pa, pb);
          send(a, lo, i);
          send(b, lo, i);
          send(pa, lo, i);
          send(pb, lo, i);
          break;
        }
      }
    }, 1024);

    // Update: each recipient takes its minimum message (roots only for
    // RootUpdate).
    std::atomic<bool> changed{false};
    const std::vector<vid_t> recipients = collect(dirty);
    parallel_for(std::size_t{0}, recipients.size(), w, [&](std::size_t k) {
      const vid_t x = recipients[k];
      const std::uint64_t key = msg[x];
      msg[x] = kNoMessage;
      const vid_t px = atomic_load(p[x], std::memory_order_relaxed);
      if (var.update == LTUpdate::RootUpdate && px != x) return;
      const vid_t value = packed_value(key);
      if (value >= px) return;
      if (px != x) ++nonroot.local();
      atomic_store(p[x], value);
      if (forest) opt.forest->slots[x] = orig[packed_index(key)];
      changed.store(true, std::memory_order_relaxed);
    }, 1024);

    auto shortcut = [&](vid_t x) {
      const vid_t px = atomic_load(p[x], std::memory_order_relaxed);
      const vid_t target = var.shortcut == LTShortcut::Shortcut
                               ? atomic_load(p[px], std::memory_order_relaxed)
                               : find_naive(x, p);
      if (target < px) {
        write_min(p[x], target);
        changed.store(true, std::memory_order_relaxed);
      }
    };
    universe.for_each(w, shortcut);
    if (!universe.all)
      parallel_for(std::size_t{0}, recipients.size(), w, [&](std::size_t k) { shortcut(recipients[k]); }, 1024);

    bool altered = false;
    if (var.alter) {
      std::atomic<bool> any{false};
      parallel_for(std::size_t{0}, work.size(), w, [&](std::size_t i) {
        const Edge e = work[i];
        const Edge next{atomic_load(p[e.src], std::memory_order_relaxed),
                        atomic_load(p[e.dst], std::memory_order_relaxed)};
        if (next != e) {
          work[i] = next;
          any.store(true, std::memory_order_relaxed);
        }
      }, 2048);
      altered = any.load();
      // Self-loops carry no information once altered.
      std::size_t kept = 0;
      for (std::size_t i = 0; i < work.size(); ++i) {
        if (work[i].src == work[i].dst) continue;
        work[kept] = work[i];
        if (forest) orig[kept] = orig[i];
        ++kept;
      }
      work.resize(kept);
      if (forest) orig.resize(kept);
    }

    if (opt.on_round) opt.on_round(stats.rounds, p);
    if (!changed.load() && !altered) break;
  }
  stats.nonroot_updates = nonroot.sum();
  return stats;
}

// Working edge list for a CSR graph: adjacency of the active vertices, each
// undirected edge once, with endpoints labeled l_max contracted onto l_max.
struct WorkingEdges {
  std::vector<Edge> work;
  std::vector<Edge> orig;
};

inline WorkingEdges gather_working_edges(const Graph& g, const Labels& labels,
                                         const RoundOptions& opt, bool keep_orig) {
  WorkingEdges out;
  const vid_t l_max = opt.l_max;
  std::uint64_t seen = 0;
  for (vid_t u = 0; u < g.num_vertices(); ++u) {
    if (labels[u] == l_max) continue;
    const auto nbrs = g.neighbors(u);
    seen += nbrs.size();
    for (vid_t v : nbrs) {
      const bool settled = labels[v] == l_max;
      if (!settled && v < u) continue;
      out.work.push_back({u, settled ? l_max : v});
      if (keep_orig) out.orig.push_back({u, v});
    }
  }
  count(opt, seen);
  return out;
}

inline void require_no_forest(const RoundOptions& opt, const char* algo) {
  if (opt.forest)
    throw ConfigError(std::string(algo) + " is not root-based and cannot record a spanning forest");
}

}  // namespace detail

/// Shiloach-Vishkin: every round hooks round-start roots onto the smaller
/// neighboring label with an atomic min, then fully shortcuts every vertex.
/// Vertices labeled opt.l_max are not used as edge sources.
inline RoundStats shiloach_vishkin(const Graph& g, Labels& labels, const RoundOptions& opt = {}) {
  const auto active = detail::active_vertices(labels, opt.l_max, opt.workers);
  Labels prev = labels;
  detail::CsrSource src{g, active};
  return detail::shiloach_vishkin_core(src, g.num_edges(), detail::VertexSet::everything(g.num_vertices()),
                                       labels, prev, opt);
}

/// Runs one Liu-Tarjan variant to its fixpoint on a CSR graph.
inline RoundStats liu_tarjan(const Graph& g, Labels& labels, const LTVariant& var,
                             const RoundOptions& opt = {}) {
  if (!is_valid(var)) throw ConfigError("not one of the 16 Liu-Tarjan variants");
  if (opt.forest && !is_root_based(var))
    throw ConfigError("Liu-Tarjan variant " + name(var) + " is not root-based");
  auto we = detail::gather_working_edges(g, labels, opt, opt.forest != nullptr);
  std::vector<std::uint64_t> msg(labels.size(), detail::kNoMessage);
  return detail::liu_tarjan_core(std::move(we.work), std::move(we.orig),
                                 detail::VertexSet::everything(static_cast<vid_t>(labels.size())),
                                 labels, var, msg, opt);
}

/// COO form. Edges whose endpoints both carry opt.l_max are skipped.
inline RoundStats liu_tarjan(const EdgeList& el, Labels& labels, const LTVariant& var,
                             const RoundOptions& opt = {}) {
  if (!is_valid(var)) throw ConfigError("not one of the 16 Liu-Tarjan variants");
  if (opt.forest && !is_root_based(var))
    throw ConfigError("Liu-Tarjan variant " + name(var) + " is not root-based");
  if (labels.size() < el.n) throw MalformedInput("labels shorter than the edge list's n");
  std::vector<Edge> work, orig;
  for (const Edge& e : el.edges) {
    if (e.src >= labels.size() || e.dst >= labels.size())
      throw MalformedInput("edge endpoint out of range");
    const bool su = labels[e.src] == opt.l_max, sv = labels[e.dst] == opt.l_max;
    if ((su && sv) || e.src == e.dst) continue;
    work.push_back({su ? opt.l_max : e.src, sv ? opt.l_max : e.dst});
    if (opt.forest) orig.push_back(e);
  }
  std::vector<std::uint64_t> msg(labels.size(), detail::kNoMessage);
  return detail::liu_tarjan_core(std::move(work), std::move(orig),
                                 detail::VertexSet::everything(static_cast<vid_t>(labels.size())),
                                 labels, var, msg, opt);
}

/// Stergiou: parent-connect rounds that read only the previous round's
/// array and atomically lower the current one, followed by one shortcut
/// step; the arrays are synchronized at every round boundary.
inline RoundStats stergiou(const Graph& g, Labels& labels, const RoundOptions& opt = {}) {
  detail::require_no_forest(opt, "Stergiou");
  RoundStats stats;
  const int w = opt.workers;
  const vid_t n = g.num_vertices();
  const vid_t l_max = opt.l_max;
  const auto active = detail::active_vertices(labels, l_max, w);
  std::vector<char> settled(n);
  for (vid_t v = 0; v < n; ++v) settled[v] = labels[v] == l_max;
  Labels prev = labels;
  Labels& cur = labels;
  detail::CsrSource src{g, active};
  while (true) {
    ++stats.rounds;
    detail::check_round_budget(stats.rounds, n);
    src.for_each(w, opt, [&](vid_t u, vid_t v, eid_t) {
      const vid_t b = settled[v] ? l_max : v;
      const vid_t pa = prev[u], pb = prev[b];
      if (pa == pb) return;
      write_min(cur[pa], pb);
      write_min(cur[pb], pa);
    });
    parallel_for(vid_t{0}, n, w, [&](vid_t x) {
      const vid_t c = atomic_load(cur[x], std::memory_order_relaxed);
      const vid_t cc = atomic_load(cur[c], std::memory_order_relaxed);
      if (cc < c) write_min(cur[x], cc);
    }, 2048);
    std::atomic<bool> changed{false};
    parallel_for(vid_t{0}, n, w, [&](vid_t x) {
      if (prev[x] != cur[x]) {
        prev[x] = cur[x];
        changed.store(true, std::memory_order_relaxed);
      }
    }, 2048);
    if (opt.on_round) opt.on_round(stats.rounds, labels);
    if (!changed.load()) break;
  }
  return stats;
}

/// Label propagation: for every edge with differing labels, the endpoint
/// holding the larger label lowers it to the smaller one. Stops after a
/// round without writes.
inline RoundStats label_propagation(const Graph& g, Labels& labels, const RoundOptions& opt = {}) {
  detail::require_no_forest(opt, "label propagation");
  RoundStats stats;
  const int w = opt.workers;
  const vid_t n = g.num_vertices();
  const vid_t l_max = opt.l_max;
  const auto active = detail::active_vertices(labels, l_max, w);
  std::vector<char> settled(n);
  for (vid_t v = 0; v < n; ++v) settled[v] = labels[v] == l_max;
  detail::CsrSource src{g, active};
  while (true) {
    ++stats.rounds;
    detail::check_round_budget(stats.rounds, n);
    std::atomic<bool> wrote{false};
    src.for_each(w, opt, [&](vid_t u, vid_t v, eid_t) {
      const vid_t b = settled[v] ? l_max : v;
      const vid_t la = atomic_load(labels[u], std::memory_order_relaxed);
      const vid_t lb = atomic_load(labels[b], std::memory_order_relaxed);
      if (la == lb) return;
      const bool w1 = la < lb ? write_min(labels[b], la) : write_min(labels[u], lb);
      if (w1) wrote.store(true, std::memory_order_relaxed);
    });
    if (opt.on_round) opt.on_round(stats.rounds, labels);
    if (!wrote.load()) break;
  }
  return stats;
}

}  // namespace gconn
