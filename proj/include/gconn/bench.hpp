#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <istream>
#include <ostream>
#include <sstream>
#include <random>
#include <string>
#include <vector>

#include "gconn/driver.hpp"
#include "gconn/generators.hpp"
#include "gconn/graph.hpp"
#include "gconn/validate.hpp"

namespace gconn {

struct NamedGraph {
  std::string name;
  Graph graph;
};

/// Raised when a benchmarked run disagrees with the oracle.
struct VerificationError : Error {
  using Error::Error;
};

struct CsvRow {
  std::string graph, spec, sample, finish, find, splice;
  int workers = 1;
  std::uint64_t batch_size = 0;
  double ratio = 0;
  double time_ms = 0;
  double throughput_eps = 0;
  double cov = 0, ic = 0, ratio_sampling = 0;
  std::uint64_t inspections_sample = 0, inspections_finish = 0;
  int rounds = 0;
  vid_t components = 0;
  std::vector<double> raw_ms;  // every timed repeat, in run order
};

inline constexpr const char* kCsvHeader =
    "graph,spec,sample,finish,find,splice,workers,batch_size,ratio,time_ms,throughput_eps,cov,ic,"
    "ratio_sampling,inspections_sample,inspections_finish,rounds,components";

inline void write_csv_header(std::ostream& os) { os << kCsvHeader << "\n"; }

inline void write_csv_row(std::ostream& os, const CsvRow& r) {
  os << r.graph << ',' << r.spec << ',' << r.sample << ',' << r.finish << ',' << r.find << ','
     << r.splice << ',' << r.workers << ',' << r.batch_size << ',' << r.ratio << ',' << r.time_ms << ','
     << r.throughput_eps << ',' << r.cov << ',' << r.ic << ',' << r.ratio_sampling << ','
     << r.inspections_sample << ',' << r.inspections_finish << ',' << r.rounds << ',' << r.components
     << "\n";
}

inline void write_csv(std::ostream& os, const std::vector<CsvRow>& rows) {
  write_csv_header(os);
  for (const auto& r : rows) write_csv_row(os, r);
}

/// Middle element of the sorted values (the lower one for even counts).
inline double median(std::vector<double> v) {
  if (v.empty()) return 0;
  std::sort(v.begin(), v.end());
  return v[(v.size() - 1) / 2];
}

namespace detail {

inline CsvRow spec_row(const std::string& graph, const AlgorithmSpec& s, int workers) {
  CsvRow r;
  r.graph = graph;
  r.spec = to_string(s);
  r.sample = name(s.sample);
  if (s.sample == SampleKind::KOut && s.kout_mode == KOutMode::FirstPlusRandom) r.sample = "kout_rand";
  r.finish = finish_name(s);
  r.find = s.finish == FinishKind::UnionFind ? name(s.uf.find) : "-";
  r.splice = s.finish == FinishKind::UnionFind ? name(s.uf.splice) : "-";
  r.workers = workers;
  return r;
}

}  // namespace detail

/// One row per (graph, spec, workers). Each row starts with an untimed
/// run that is checked against the oracle and supplies the metrics, then
/// `repeats` timed runs; time_ms is their median.
inline std::vector<CsvRow> sweep_static(const std::vector<NamedGraph>& graphs,
                                        const std::vector<AlgorithmSpec>& specs,
                                        const std::vector<int>& workers, int repeats = 5) {
  std::vector<CsvRow> rows;
  for (const auto& ng : graphs) {
    const Labels truth = oracle_components(ng.graph);
    for (const auto& spec : specs)
      for (int w : workers) {
        StaticOptions check{w, true};
        const auto first = static_connectivity(ng.graph, spec, check);
        if (first.labels != truth)
          throw VerificationError("oracle mismatch for " + to_string(spec) + " on " + ng.name +
                                  " with " + std::to_string(w) + " workers");
        CsvRow r = detail::spec_row(ng.name, spec, w);
        r.cov = first.stats.cov;
        r.ic = first.stats.ic;
        r.inspections_sample = first.stats.edge_inspections.at("sample");
        r.inspections_finish = first.stats.edge_inspections.at("finish");
        r.rounds = first.stats.rounds;
        r.components = first.stats.component_count;
        std::vector<double> ratios;
        for (int i = 0; i < repeats; ++i) {
          const auto run = static_connectivity(ng.graph, spec, StaticOptions{w, false});
          r.raw_ms.push_back(run.stats.total_time() * 1e3);
          ratios.push_back(run.stats.sampling_ratio);
        }
        r.time_ms = median(r.raw_ms);
        r.ratio_sampling = median(ratios);
        const double undirected = static_cast<double>(ng.graph.num_edges()) / 2;
        r.throughput_eps = r.time_ms > 0 ? undirected / (r.time_ms / 1e3) : 0;
        rows.push_back(std::move(r));
      }
  }
  return rows;
}

/// Operation stream over a graph: its undirected edges as inserts in
/// random order, with round(inserts / ratio) random-pair queries shuffled
/// in (none when ratio is 0).
inline std::vector<Op> make_stream(const Graph& g, double ratio, std::uint64_t seed) {
  std::vector<Op> ops;
  for (const Edge& e : to_edge_list(g).edges) ops.push_back(insert_op(e.src, e.dst));
  std::mt19937_64 rng(seed);
  if (ratio > 0 && g.num_vertices() > 0) {
    const auto queries = static_cast<std::size_t>(std::llround(static_cast<double>(ops.size()) / ratio));
    std::uniform_int_distribution<vid_t> pick(0, g.num_vertices() - 1);
    for (std::size_t i = 0; i < queries; ++i) {
      const vid_t u = pick(rng);
      ops.push_back(query_op(u, pick(rng)));
    }
  }
  std::shuffle(ops.begin(), ops.end(), rng);
  return ops;
}

/// Splits a stream into batches of batch_size ops; 0 means one batch.
inline std::vector<Batch> make_batches(const std::vector<Op>& ops, std::size_t batch_size) {
  std::vector<Batch> out;
  if (batch_size == 0 || batch_size >= ops.size()) {
    out.push_back({ops, {}});
    return out;
  }
  for (std::size_t i = 0; i < ops.size(); i += batch_size)
    out.push_back({std::vector<Op>(ops.begin() + static_cast<std::ptrdiff_t>(i),
                                   ops.begin() + static_cast<std::ptrdiff_t>(std::min(ops.size(), i + batch_size))),
                   {}});
  return out;
}

/// Checks every query bit and the final partition against a sequential
/// prefix oracle. Returns an empty string on success.
inline std::string verify_batches(vid_t n, const std::vector<Batch>& batches, const Labels& final_labels) {
  std::vector<vid_t> parent(n);
  std::iota(parent.begin(), parent.end(), vid_t{0});
  auto root = [&](vid_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t b = 0; b < batches.size(); ++b) {
    const auto& ops = batches[b].ops;
    for (const Op& op : ops)
      if (op.kind == Op::Kind::Insert) {
        const vid_t a = root(op.u), c = root(op.v);
        if (a != c) parent[std::max(a, c)] = std::min(a, c);
      }
    for (std::size_t i = 0; i < ops.size(); ++i) {
      const bool expect = ops[i].kind == Op::Kind::Query && root(ops[i].u) == root(ops[i].v);
      if (batches[b].results.test(i) != expect)
        return "batch " + std::to_string(b) + " op " + std::to_string(i) + ": expected " +
               (expect ? "true" : "false");
    }
  }
  Labels truth(n);
  for (vid_t v = 0; v < n; ++v) truth[v] = root(v);
  if (!partition_equal(truth, final_labels)) return "final partition differs from the oracle";
  return {};
}

/// One row per (graph, spec, batch size, ratio, workers); throughput is
/// operations per second over the batch phases, median of `repeats`.
inline std::vector<CsvRow> sweep_incremental(const std::vector<NamedGraph>& graphs,
                                             const std::vector<AlgorithmSpec>& specs,
                                             const std::vector<std::size_t>& batch_sizes,
                                             const std::vector<double>& ratios,
                                             const std::vector<int>& workers, int repeats = 5,
                                             std::uint64_t seed = 1) {
  std::vector<CsvRow> rows;
  for (const auto& ng : graphs) {
    const vid_t n = ng.graph.num_vertices();
    for (double ratio : ratios) {
      const std::vector<Op> stream = make_stream(ng.graph, ratio, seed);
      for (std::size_t bs : batch_sizes) {
        const std::vector<Batch> pristine = make_batches(stream, bs);
        for (const auto& spec : specs)
          for (int w : workers) {
            IncrementalOptions io{w, BatchMode::Phased};
            std::vector<Batch> batches = pristine;
            IncrementalConnectivity check(n, spec, io);
            for (auto& b : batches) check.apply(b);
            const std::string err = verify_batches(n, batches, check.labels());
            if (!err.empty())
              throw VerificationError("oracle mismatch for " + to_string(spec) + " on " + ng.name + ": " + err);

            CsvRow r = detail::spec_row(ng.name, spec, w);
            r.batch_size = bs == 0 || bs > stream.size() ? stream.size() : bs;
            r.ratio = ratio;
            r.inspections_finish = check.stats().edge_inspections.at("finish");
            r.rounds = check.stats().rounds;
            r.components = count_components(check.labels());
            for (int i = 0; i < repeats; ++i) {
              std::vector<Batch> run = pristine;
              IncrementalConnectivity inc(n, spec, io);
              for (auto& b : run) inc.apply(b);
              r.raw_ms.push_back(inc.stats().phase_times.at("batches") * 1e3);
            }
            r.time_ms = median(r.raw_ms);
            r.throughput_eps = r.time_ms > 0 ? static_cast<double>(stream.size()) / (r.time_ms / 1e3) : 0;
            rows.push_back(std::move(r));
          }
      }
    }
  }
  return rows;
}

/// Finish-phase edge inspections per (spec, batch size) for an insert-only
/// stream, single worker.
inline std::vector<CsvRow> edge_inspection_report(const NamedGraph& g, const std::vector<AlgorithmSpec>& specs,
                                                  const std::vector<std::size_t>& batch_sizes,
                                                  std::uint64_t seed = 1) {
  return sweep_incremental({g}, specs, batch_sizes, {0.0}, {1}, 1, seed);
}

/// Benchmark suite at desk scale.
inline std::vector<NamedGraph> bench_suite(std::uint64_t seed = 1) {
  std::vector<NamedGraph> s;
  const vid_t n = 1u << 14;
  s.push_back({"path", build_csr(gen_path(1u << 16))});
  s.push_back({"grid", build_csr(gen_grid(256, 256))});
  s.push_back({"star", build_csr(gen_star(1u << 16))});
  s.push_back({"clique", build_csr(gen_clique(1u << 10))});
  s.push_back({"gnp_sparse", build_csr(gen_gnp(n, 0.5 / n, seed))});
  s.push_back({"gnp_mid", build_csr(gen_gnp(n, 2.0 / n, seed + 1))});
  s.push_back({"gnp_dense", build_csr(gen_gnp(n, 8.0 / n, seed + 2))});
  s.push_back({"rmat", build_csr(gen_rmat({14, 10, 0.5, 0.1, 0.1, seed}))});
  s.push_back({"ba", build_csr(gen_ba(n, 5, seed))});
  s.push_back({"two_comp", build_csr(permute_vertices(disjoint_copies(gen_ba(n / 2, 3, seed), 2), seed))});
  s.push_back({"thousand_comp", build_csr(permute_vertices(disjoint_copies(gen_path(16), 1000), seed))});
  return s;
}

/// Smaller suite with the same shapes, used by the acceptance checks.
inline std::vector<NamedGraph> desk_suite(std::uint64_t seed = 1) {
  std::vector<NamedGraph> s;
  const vid_t n = 2048;
  s.push_back({"path", build_csr(gen_path(4096))});
  s.push_back({"star", build_csr(gen_star(4096))});
  s.push_back({"clique", build_csr(gen_clique(128))});
  s.push_back({"grid", build_csr(gen_grid(64, 64))});
  s.push_back({"gnp_sparse", build_csr(gen_gnp(n, 0.5 / n, seed))});
  s.push_back({"gnp_mid", build_csr(gen_gnp(n, 2.0 / n, seed + 1))});
  s.push_back({"gnp_dense", build_csr(gen_gnp(n, 8.0 / n, seed + 2))});
  s.push_back({"rmat", build_csr(gen_rmat({12, 8, 0.5, 0.1, 0.1, seed}))});
  s.push_back({"ba", build_csr(gen_ba(4096, 3, seed))});
  s.push_back({"two_comp", build_csr(permute_vertices(disjoint_copies(gen_ba(1024, 3, seed), 2), seed))});
  s.push_back({"thousand_comp", build_csr(permute_vertices(disjoint_copies(gen_path(4), 1000), seed))});
  return s;
}

/// Text operation stream: one "i u v" (insert) or "q u v" (query) per
/// line; '#' starts a comment line.
inline std::vector<Op> read_op_stream(std::istream& in) {
  std::vector<Op> ops;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string kind;
    if (!(ls >> kind) || kind[0] == '#') continue;
    std::uint64_t u = 0, v = 0;
    if (!(ls >> u >> v)) throw ParseError("expected '<i|q> u v'", line_no);
    std::string extra;
    if (ls >> extra) throw ParseError("trailing token '" + extra + "'", line_no);
    if (u >= kMaxVertices || v >= kMaxVertices) throw ParseError("vertex id exceeds the 2^31 limit", line_no);
    if (kind == "i") ops.push_back(insert_op(static_cast<vid_t>(u), static_cast<vid_t>(v)));
    else if (kind == "q") ops.push_back(query_op(static_cast<vid_t>(u), static_cast<vid_t>(v)));
    else throw ParseError("unknown operation '" + kind + "'", line_no);
  }
  return ops;
}

inline void write_op_stream(std::ostream& out, const std::vector<Op>& ops) {
  for (const Op& op : ops) out << (op.kind == Op::Kind::Insert ? 'i' : 'q') << ' ' << op.u << ' ' << op.v << '\n';
}

}  // namespace gconn
