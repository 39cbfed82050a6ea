#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "gconn/dset.hpp"
#include "gconn/forest.hpp"
#include "gconn/graph.hpp"
#include "gconn/minbased.hpp"
#include "gconn/parallel.hpp"
#include "gconn/sampling.hpp"
#include "gconn/validate.hpp"

namespace gconn {

enum class SampleKind { None, KOut, HB, BFS };
enum class FinishKind { UnionFind, SV, LT, Stergiou, LP };

/// One point of the design space: a sampling strategy and a finish
/// algorithm with its union-find or Liu-Tarjan configuration.
struct AlgorithmSpec {
  SampleKind sample = SampleKind::None;
  FinishKind finish = FinishKind::UnionFind;
  UnionConfig uf{};
  LTVariant lt{};
  int k = 2;
  KOutMode kout_mode = KOutMode::FirstK;
  int hb_edges = 4;
  int bfs_probes = 64;
  std::uint64_t seed = 1;

  friend bool operator==(const AlgorithmSpec&, const AlgorithmSpec&) = default;
};

inline const char* name(SampleKind s) {
  switch (s) {
    case SampleKind::None: return "none";
    case SampleKind::KOut: return "kout";
    case SampleKind::HB: return "hb";
    case SampleKind::BFS: return "bfs";
  }
  return "?";
}

inline std::string finish_name(const AlgorithmSpec& s) {
  switch (s.finish) {
    case FinishKind::UnionFind: return name(s.uf.unite);
    case FinishKind::SV: return "sv";
    case FinishKind::LT: {
      std::string n = name(s.lt);
      for (auto& c : n) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      return n;
    }
    case FinishKind::Stergiou: return "stergiou";
    case FinishKind::LP: return "lp";
  }
  return "?";
}

/// Spec string in the `sample+finish+find+splice` grammar. Find and splice
/// only appear for union-find finishes; splice only when it is not none.
inline std::string to_string(const AlgorithmSpec& s) {
  std::string out = name(s.sample);
  if (s.sample == SampleKind::KOut && s.kout_mode == KOutMode::FirstPlusRandom) out = "kout_rand";
  out += "+" + finish_name(s);
  if (s.finish == FinishKind::UnionFind) {
    out += std::string("+") + name(s.uf.find);
    if (s.uf.splice != SpliceKind::None) out += std::string("+") + name(s.uf.splice);
  }
  return out;
}

inline bool is_root_based(const AlgorithmSpec& s) {
  switch (s.finish) {
    case FinishKind::UnionFind:
    case FinishKind::SV: return true;
    case FinishKind::LT: return is_root_based(s.lt);
    case FinishKind::Stergiou:
    case FinishKind::LP: return false;
  }
  return false;
}

/// Every supported combination: 4 sampling modes x (32 union-find
/// configurations + SV + 16 Liu-Tarjan variants + Stergiou + LP).
inline std::vector<AlgorithmSpec> all_specs() {
  std::vector<AlgorithmSpec> finishes;
  for (const auto& cfg : all_union_configs()) {
    AlgorithmSpec s;
    s.uf = cfg;
    finishes.push_back(s);
  }
  AlgorithmSpec sv;
  sv.finish = FinishKind::SV;
  finishes.push_back(sv);
  for (const auto& v : all_lt_variants()) {
    AlgorithmSpec s;
    s.finish = FinishKind::LT;
    s.lt = v;
    finishes.push_back(s);
  }
  AlgorithmSpec st;
  st.finish = FinishKind::Stergiou;
  finishes.push_back(st);
  AlgorithmSpec lp;
  lp.finish = FinishKind::LP;
  finishes.push_back(lp);

  std::vector<AlgorithmSpec> out;
  for (auto sample : {SampleKind::None, SampleKind::KOut, SampleKind::HB, SampleKind::BFS})
    for (AlgorithmSpec s : finishes) {
      s.sample = sample;
      out.push_back(s);
    }
  return out;
}

inline std::string valid_spec_help() {
  std::ostringstream os;
  os << "spec grammar: sample+finish[+find[+splice]]\n"
     << "  sample: none kout kout_rand hb bfs\n"
     << "  union-find finishes (finish+find+splice):\n";
  for (const auto& cfg : all_union_configs()) os << "    " << to_string(cfg) << "\n";
  os << "  other finishes (no find/splice): sv stergiou lp";
  for (const auto& v : all_lt_variants()) {
    std::string n = name(v);
    for (auto& c : n) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    os << " " << n;
  }
  return os.str();
}

inline void validate_spec(const AlgorithmSpec& s) {
  if (s.finish == FinishKind::UnionFind && !valid_combination(s.uf))
    throw ConfigError("invalid union-find combination " + to_string(s.uf) + "\n" + valid_spec_help());
  if (s.finish == FinishKind::LT && !is_valid(s.lt))
    throw ConfigError("not one of the 16 Liu-Tarjan variants");
  if (s.k < 1) throw ConfigError("k-out sampling needs k >= 1");
  if (s.hb_edges < 1) throw ConfigError("HB sampling needs N >= 1");
  if (s.bfs_probes < 1) throw ConfigError("BFS sampling needs at least one probe");
}

inline AlgorithmSpec parse_spec(std::string_view text) {
  std::vector<std::string> tok;
  std::string cur;
  for (char c : text) {
    if (c == '+') {
      tok.push_back(cur);
      cur.clear();
    } else {
      cur += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
  }
  tok.push_back(cur);
  auto bad = [&](const std::string& why) {
    return ConfigError("bad spec '" + std::string(text) + "': " + why + "\n" + valid_spec_help());
  };
  if (tok.size() < 2) throw bad("expected at least sample+finish");

  AlgorithmSpec s;
  const std::string& sm = tok[0];
  if (sm == "none") s.sample = SampleKind::None;
  else if (sm == "kout") s.sample = SampleKind::KOut;
  else if (sm == "kout_rand") s.sample = SampleKind::KOut, s.kout_mode = KOutMode::FirstPlusRandom;
  else if (sm == "hb") s.sample = SampleKind::HB;
  else if (sm == "bfs") s.sample = SampleKind::BFS;
  else throw bad("unknown sampling '" + sm + "'");

  const std::string& fn = tok[1];
  std::optional<UnionKind> uk;
  for (auto u : {UnionKind::Async, UnionKind::Hooks, UnionKind::Early, UnionKind::RemLock,
                 UnionKind::RemCAS, UnionKind::JTB})
    if (fn == name(u)) uk = u;
  if (uk) {
    s.finish = FinishKind::UnionFind;
    s.uf.unite = *uk;
    if (tok.size() > 4) throw bad("too many tokens");
    if (tok.size() >= 3) {
      bool found = false;
      for (auto f : {FindKind::Naive, FindKind::AtomicSplit, FindKind::AtomicHalve,
                     FindKind::Compress, FindKind::TwoTrySplit})
        if (tok[2] == name(f)) s.uf.find = f, found = true;
      if (!found) throw bad("unknown find '" + tok[2] + "'");
    }
    if (tok.size() == 4) {
      bool found = false;
      for (auto sp : {SpliceKind::None, SpliceKind::SplitOne, SpliceKind::HalveOne,
                      SpliceKind::SpliceAtomic})
        if (tok[3] == name(sp)) s.uf.splice = sp, found = true;
      if (!found) throw bad("unknown splice '" + tok[3] + "'");
    }
    if (!valid_combination(s.uf)) throw bad(to_string(s.uf) + " is not a supported combination");
    return s;
  }
  if (tok.size() != 2) throw bad("finish '" + fn + "' takes no find/splice tokens");
  if (fn == "sv") s.finish = FinishKind::SV;
  else if (fn == "stergiou") s.finish = FinishKind::Stergiou;
  else if (fn == "lp") s.finish = FinishKind::LP;
  else if (auto v = parse_lt_variant(fn)) s.finish = FinishKind::LT, s.lt = *v;
  else throw bad("unknown finish '" + fn + "'");
  return s;
}

// Union-find configuration used by the sampling phase. Union-find finishes
// sample with their own configuration; the others use Union-Async with
// atomic splitting.
inline UnionConfig sampling_union(const AlgorithmSpec& s) {
  if (s.finish == FinishKind::UnionFind) return s.uf;
  return {UnionKind::Async, FindKind::AtomicSplit, SpliceKind::None};
}

/// Points every vertex at its root. Idempotent.
inline Labels& label_finalization(Labels& labels, int workers = 1) {
  compress_all(labels, workers);
  return labels;
}

namespace detail {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double lap() {
    const auto now = std::chrono::steady_clock::now();
    const double s = std::chrono::duration<double>(now - start_).count();
    start_ = now;
    return s;
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

struct LinkRecorder {
  ForestEdges* forest;
  vid_t u, v;
  void operator()(vid_t loser) const {
    if (forest) forest->slots[loser] = Edge{u, v};
  }
};

}  // namespace detail

struct FinishContext {
  int workers = 1;
  UnionFind* uf = nullptr;  // required for union-find finishes
  InspectionCounter* inspections = nullptr;
  ForestEdges* forest = nullptr;
  int rounds = 0;  // output
};

/// Finish phase over the vertices whose label differs from l_max. Vertices
/// labeled l_max are never used as edge sources.
inline void finish_phase(const Graph& g, Labels& labels, vid_t l_max, const AlgorithmSpec& spec,
                         FinishContext& ctx) {
  const int w = ctx.workers;
  const std::vector<vid_t> active = detail::active_vertices(labels, l_max, w);
  RoundOptions ro;
  ro.workers = w;
  ro.l_max = l_max;
  ro.inspections = ctx.inspections;
  ro.forest = ctx.forest;
  RoundStats rs;
  switch (spec.finish) {
    case FinishKind::UnionFind: {
      if (!ctx.uf) throw ConfigError("union-find finish needs a UnionFind");
      UnionFind& uf = *ctx.uf;
      PerWorker<std::uint64_t> seen(w);
      parallel_for(std::size_t{0}, active.size(), w, [&](std::size_t i) {
        const vid_t u = active[i];
        const auto nbrs = g.neighbors(u);
        for (vid_t v : nbrs) uf.unite(u, v, detail::LinkRecorder{ctx.forest, u, v});
        seen.local() += nbrs.size();
      }, 64);
      if (ctx.inspections) ctx.inspections->add(seen.sum());
      break;
    }
    case FinishKind::SV: rs = shiloach_vishkin(g, labels, ro); break;
    case FinishKind::LT: rs = liu_tarjan(g, labels, spec.lt, ro); break;
    case FinishKind::Stergiou: rs = stergiou(g, labels, ro); break;
    case FinishKind::LP: rs = label_propagation(g, labels, ro); break;
  }
  ctx.rounds = rs.rounds;
}

struct StaticOptions {
  int workers = 1;
  // Computes cov and ic; costs an extra pass over the active adjacency.
  bool metrics = true;
};

struct ConnectivityResult {
  Labels labels;
  RunStats stats;
};

struct ForestResult {
  ForestEdges forest;
  RunStats stats;
};

namespace detail {

// Shared body of static connectivity and spanning forest.
inline RunStats run_two_phase(const Graph& g, const AlgorithmSpec& spec, const StaticOptions& opt,
                              Labels& labels, ForestEdges* forest) {
  validate_spec(spec);
  const vid_t n = g.num_vertices();
  const int w = std::max(1, opt.workers);
  RunStats st;
  st.algorithm = to_string(spec);
  st.vertices = n;
  st.edges = g.num_edges();

  Stopwatch clock;
  labels = make_set(n);
  UnionFind uf(labels, sampling_union(spec), spec.seed);
  InspectionCounter sample_count(w), finish_count(w);
  SampleOptions so{w, spec.seed, &sample_count, forest};
  switch (spec.sample) {
    case SampleKind::None: break;
    case SampleKind::KOut: kout_sample(g, uf, spec.k, spec.kout_mode, so); break;
    case SampleKind::HB: hb_sample(g, uf, spec.hb_edges, so); break;
    case SampleKind::BFS: {
      const SampleInfo info = bfs_sample(g, labels, spec.bfs_probes, so);
      if (info.bfs_source != kUninitialized) {
        st.bfs_source = info.bfs_source;
        st.bfs_reached = info.bfs_reached;
      }
      break;
    }
  }
  std::uint64_t freq = 0;
  const vid_t mode = most_frequent_label(labels, w, &freq);
  const vid_t l_max = spec.sample == SampleKind::None ? n : mode;
  st.phase_times["sample"] = clock.lap();

  if (opt.metrics && n > 0) {
    st.cov = static_cast<double>(freq) / n;
    // Edges with differing labels always have an active endpoint; entries
    // whose other end is settled stand for both directions.
    PerWorker<std::uint64_t> crossing(w);
    parallel_for(vid_t{0}, n, w, [&](vid_t u) {
      if (labels[u] == l_max) return;
      for (vid_t v : g.neighbors(u))
        if (labels[u] != labels[v]) crossing.local() += labels[v] == l_max ? 2 : 1;
    }, 256);
    st.ic = g.num_edges() ? static_cast<double>(crossing.sum()) / g.num_edges() : 0.0;
    clock.lap();
  }
  if (spec.sample != SampleKind::None) st.l_max = l_max;

  FinishContext ctx{w, &uf, &finish_count, forest, 0};
  finish_phase(g, labels, l_max, spec, ctx);
  st.rounds = ctx.rounds;
  st.phase_times["finish"] = clock.lap();

  if (!forest) {
    label_finalization(labels, w);
    if (spec.finish == FinishKind::UnionFind && spec.uf.unite == UnionKind::JTB) {
      labels = canonicalize(labels);
      st.reference_approximate = true;
    }
    st.phase_times["finalize"] = clock.lap();
  } else if (spec.finish == FinishKind::UnionFind && spec.uf.unite == UnionKind::JTB) {
    st.reference_approximate = true;
  }

  st.edge_inspections["sample"] = sample_count.total();
  st.edge_inspections["finish"] = finish_count.total();
  const double total = st.total_time();
  st.sampling_ratio = total > 0 ? st.phase_times["sample"] / total : 0.0;
  return st;
}

}  // namespace detail

/// Two-phase static connectivity. Labels come back finalized: every
/// vertex holds the minimum id of its component.
inline ConnectivityResult static_connectivity(const Graph& g, const AlgorithmSpec& spec,
                                              const StaticOptions& opt = {}) {
  ConnectivityResult r;
  r.stats = detail::run_two_phase(g, spec, opt, r.labels, nullptr);
  r.stats.component_count = 0;
  for (vid_t v = 0; v < r.labels.size(); ++v) r.stats.component_count += r.labels[v] == v;
  return r;
}

/// Spanning forest: the same two phases, with every root hook recording
/// its edge at the losing root's slot. Needs a root-based finish.
inline ForestResult spanning_forest(const Graph& g, const AlgorithmSpec& spec,
                                    const StaticOptions& opt = {}) {
  validate_spec(spec);
  if (!is_root_based(spec))
    throw ConfigError("spanning forest needs a root-based finish; " + finish_name(spec) + " is not");
  ForestResult r;
  r.forest = ForestEdges(g.num_vertices());
  Labels labels;
  r.stats = detail::run_two_phase(g, spec, opt, labels, &r.forest);
  r.stats.component_count = static_cast<vid_t>(g.num_vertices() - r.forest.populated());
  return r;
}

// ---------------------------------------------------------------------------
// Incremental connectivity

struct Op {
  enum class Kind : std::uint8_t { Insert, Query };
  Kind kind = Kind::Insert;
  vid_t u = 0, v = 0;
  friend bool operator==(const Op&, const Op&) = default;
};

inline Op insert_op(vid_t u, vid_t v) { return {Op::Kind::Insert, u, v}; }
inline Op query_op(vid_t u, vid_t v) { return {Op::Kind::Query, u, v}; }

/// Fixed-size bit array with atomic set.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

  std::size_t size() const { return n_; }
  void set(std::size_t i) {
    std::atomic_ref<std::uint64_t>(words_[i / 64]).fetch_or(std::uint64_t{1} << (i % 64),
                                                           std::memory_order_relaxed);
  }
  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1; }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(__builtin_popcountll(w));
    return c;
  }
  friend bool operator==(const BitVector&, const BitVector&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

struct Batch {
  std::vector<Op> ops;
  BitVector results;  // bit i set iff ops[i] is a query answered "connected"
};

enum class BatchMode { Phased, Racy };

struct IncrementalOptions {
  int workers = 1;
  BatchMode mode = BatchMode::Phased;
};

/// Batch-incremental connectivity over a fixed vertex capacity. Vertices
/// are initialized on first use. Each batch runs its inserts, then a
/// barrier, then its queries (Phased), or everything interleaved (Racy,
/// union-find finishes only).
class IncrementalConnectivity {
 public:
  IncrementalConnectivity(vid_t capacity, const AlgorithmSpec& spec, const IncrementalOptions& opt = {},
                          const Graph* init = nullptr)
      : spec_(spec), opt_(opt), labels_(capacity, kUninitialized) {
    opt_.workers = std::max(1, opt_.workers);
    spec_.sample = SampleKind::None;
    validate_spec(spec_);
    if (!is_root_based(spec_))
      throw ConfigError("incremental connectivity needs a root-based finish; " + finish_name(spec_) +
                        " is not");
    if (opt_.mode == BatchMode::Racy) {
      if (spec_.finish != FinishKind::UnionFind)
        throw ConfigError("racy batches are only supported for union-find finishes");
      if (is_rem(spec_.uf.unite) && spec_.uf.splice == SpliceKind::SpliceAtomic)
        throw ConfigError("Rem unions with SpliceAtomic need inserts and queries in separate phases");
    }
    stats_.algorithm = to_string(spec_);
    stats_.vertices = capacity;
    if (init && init->num_vertices() > 0) {
      if (init->num_vertices() > capacity) throw ConfigError("initial graph exceeds the capacity");
      StaticOptions so;
      so.workers = opt_.workers;
      so.metrics = false;
      const auto r = static_connectivity(*init, spec_, so);
      std::copy(r.labels.begin(), r.labels.end(), labels_.begin());
      stats_.phase_times["init"] = r.stats.total_time();
      stats_.edge_inspections["init"] = r.stats.total_inspections();
    }
    if (spec_.finish == FinishKind::UnionFind) uf_ = std::make_unique<UnionFind>(labels_, spec_.uf, spec_.seed);
    if (spec_.finish == FinishKind::SV) prev_ = labels_;
    if (spec_.finish == FinishKind::LT) msg_.assign(capacity, detail::kNoMessage);
  }

  vid_t capacity() const { return static_cast<vid_t>(labels_.size()); }
  const RunStats& stats() const { return stats_; }
  const std::vector<std::uint64_t>& batch_inspections() const { return batch_inspections_; }
  const std::vector<double>& batch_times() const { return batch_times_; }

  void apply(Batch& b) {
    const int w = opt_.workers;
    for (const Op& op : b.ops)
      if (op.u >= capacity() || op.v >= capacity())
        throw MalformedInput("operation endpoint " + std::to_string(std::max(op.u, op.v)) +
                             " exceeds capacity " + std::to_string(capacity()));
    b.results = BitVector(b.ops.size());
    InspectionCounter counter(w);
    detail::Stopwatch clock;
    if (opt_.mode == BatchMode::Racy) {
      parallel_for(std::size_t{0}, b.ops.size(), w, [&](std::size_t i) {
        const Op& op = b.ops[i];
        if (op.kind == Op::Kind::Insert) {
          claim(op.u);
          claim(op.v);
          uf_->unite(op.u, op.v);
          counter.add(1);
        } else if (connected(op.u, op.v)) {
          b.results.set(i);
        }
      }, 256);
    } else {
      std::vector<Edge> inserts;
      std::vector<std::size_t> queries;
      for (std::size_t i = 0; i < b.ops.size(); ++i) {
        if (b.ops[i].kind == Op::Kind::Insert) inserts.push_back({b.ops[i].u, b.ops[i].v});
        else queries.push_back(i);
      }
      insert_phase(inserts, counter);
      parallel_for(std::size_t{0}, queries.size(), w, [&](std::size_t k) {
        const Op& op = b.ops[queries[k]];
        if (connected(op.u, op.v)) b.results.set(queries[k]);
      }, 256);
    }
    const double t = clock.lap();
    stats_.phase_times["batches"] += t;
    stats_.edge_inspections["finish"] += counter.total();
    batch_inspections_.push_back(counter.total());
    batch_times_.push_back(t);
  }

  /// Finalized labels: uninitialized vertices are their own component.
  Labels labels() const {
    Labels out(labels_.size());
    for (vid_t v = 0; v < out.size(); ++v) {
      vid_t x = v;
      while (true) {
        const vid_t px = labels_[x];
        if (px == kUninitialized || px == x) break;
        x = px;
      }
      out[v] = x;
    }
    if (spec_.finish == FinishKind::UnionFind && spec_.uf.unite == UnionKind::JTB) out = canonicalize(out);
    return out;
  }

 private:
  void claim(vid_t x) {
    if (atomic_load(labels_[x]) == kUninitialized) {
      cas(labels_[x], kUninitialized, x);
      if (!prev_.empty()) cas(prev_[x], kUninitialized, x);
    }
  }

  bool connected(vid_t u, vid_t v) {
    if (u == v) return true;
    if (atomic_load(labels_[u]) == kUninitialized || atomic_load(labels_[v]) == kUninitialized)
      return false;
    if (uf_) return uf_->find(u) == uf_->find(v);
    return find_naive(u, labels_) == find_naive(v, labels_);
  }

  void insert_phase(const std::vector<Edge>& inserts, InspectionCounter& counter) {
    const int w = opt_.workers;
    if (inserts.empty()) return;
    parallel_for(std::size_t{0}, inserts.size(), w, [&](std::size_t i) {
      claim(inserts[i].src);
      claim(inserts[i].dst);
    }, 1024);
    if (uf_) {
      parallel_for(std::size_t{0}, inserts.size(), w, [&](std::size_t i) {
        uf_->unite(inserts[i].src, inserts[i].dst);
        counter.add(1);
      }, 256);
      return;
    }

    // Round-based finishes work on the batch endpoints only, starting
    // from their current roots.
    std::vector<vid_t> endpoints;
    endpoints.reserve(2 * inserts.size());
    for (const Edge& e : inserts) {
      endpoints.push_back(e.src);
      endpoints.push_back(e.dst);
    }
    std::sort(endpoints.begin(), endpoints.end());
    endpoints.erase(std::unique(endpoints.begin(), endpoints.end()), endpoints.end());
    for (vid_t x : endpoints) {
      const vid_t r = find_naive(x, labels_);
      labels_[x] = r;
      if (!prev_.empty()) prev_[x] = r;
    }

    RoundOptions ro;
    ro.workers = w;
    ro.inspections = &counter;
    RoundStats rs;
    if (spec_.finish == FinishKind::SV) {
      detail::CooSource src{inserts};
      rs = detail::shiloach_vishkin_core(src, inserts.size(), detail::VertexSet::only(endpoints), labels_,
                                         prev_, ro);
    } else {
      std::vector<Edge> work;
      for (const Edge& e : inserts)
        if (e.src != e.dst) work.push_back(e);
      rs = detail::liu_tarjan_core(std::move(work), {}, detail::VertexSet::only(endpoints), labels_, spec_.lt,
                                   msg_, ro);
    }
    stats_.rounds += rs.rounds;
  }

  AlgorithmSpec spec_;
  IncrementalOptions opt_;
  Labels labels_;
  Labels prev_;
  std::vector<std::uint64_t> msg_;
  std::unique_ptr<UnionFind> uf_;
  RunStats stats_;
  std::vector<std::uint64_t> batch_inspections_;
  std::vector<double> batch_times_;
};

struct IncrementalResult {
  Labels labels;
  RunStats stats;
};

/// Runs every batch in order, filling each batch's result bits. The
/// vertex capacity covers the initial graph and every batch endpoint.
inline IncrementalResult incremental(const Graph* init, const AlgorithmSpec& spec, std::vector<Batch>& batches,
                                     const IncrementalOptions& opt = {}) {
  vid_t capacity = init ? init->num_vertices() : 0;
  for (const Batch& b : batches)
    for (const Op& op : b.ops) {
      if (op.u >= kMaxVertices || op.v >= kMaxVertices)
        throw MalformedInput("vertex id exceeds the 2^31 limit");
      capacity = std::max({capacity, op.u + 1, op.v + 1});
    }
  IncrementalConnectivity inc(capacity, spec, opt, init);
  for (Batch& b : batches) inc.apply(b);
  IncrementalResult r{inc.labels(), inc.stats()};
  r.stats.component_count = 0;
  for (vid_t v = 0; v < r.labels.size(); ++v) r.stats.component_count += r.labels[v] == v;
  return r;
}

}  // namespace gconn
