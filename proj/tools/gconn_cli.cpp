// Command-line front end: graph generation, static connectivity, spanning
// forest, incremental batches, benchmark sweeps and oracle census.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "gconn/gconn.hpp"

namespace {

using namespace gconn;

int env_workers() {
  if (const char* s = std::getenv("CONN_LAB_THREADS")) {
    try {
      const int w = std::stoi(s);
      if (w >= 1) return w;
    } catch (const std::exception&) {
    }
    std::cerr << "ignoring CONN_LAB_THREADS=" << s << "\n";
  }
  return default_workers();
}

// Spec options shared by static, forest, incremental and bench.
struct SpecFlags {
  std::string spec;
  std::string sample = "none", finish = "async", find = "naive", splice = "none";
  int k = 2;
  bool kout_random = false;
  int hb_edges = 4;
  int probes = 64;

  void add(CLI::App* app) {
    app->add_option("--spec", spec, "Full spec string, e.g. kout+async+halve (overrides the parts)");
    app->add_option("--sample", sample, "none | kout | kout_rand | hb | bfs");
    app->add_option("--finish", finish, "async hooks early rem_lock rem_cas jtb sv stergiou lp or a Liu-Tarjan name");
    app->add_option("--find", find, "naive | split | halve | compress | two_try");
    app->add_option("--splice", splice, "none | split_one | halve_one | splice");
    app->add_option("--k", k, "k-out edges per vertex");
    app->add_flag("--kout-random", kout_random, "k-out: first edge plus k-1 random ones");
    app->add_option("--hb-edges", hb_edges, "HB sampling edges per remaining root");
    app->add_option("--probes", probes, "BFS sampling source probes");
  }

  AlgorithmSpec build(std::uint64_t seed) const {
    std::string text = spec;
    if (text.empty()) {
      text = sample + "+" + finish;
      bool uf = false;
      for (auto u : {"async", "hooks", "early", "rem_lock", "rem_cas", "jtb"}) uf = uf || finish == u;
      if (uf) text += "+" + find + (splice == "none" ? "" : "+" + splice);
    }
    AlgorithmSpec s = parse_spec(text);
    s.k = k;
    if (kout_random) s.kout_mode = KOutMode::FirstPlusRandom;
    s.hb_edges = hb_edges;
    s.bfs_probes = probes;
    s.seed = seed;
    return s;
  }
};

std::ostream& output(const std::string& path, std::unique_ptr<std::ofstream>& file) {
  if (path.empty() || path == "-") return std::cout;
  file = std::make_unique<std::ofstream>(path);
  if (!*file) throw Error("cannot write " + path);
  return *file;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Min-based graph connectivity: static, spanning forest and incremental"};
  app.require_subcommand(1);
  app.fallthrough();
  std::uint64_t seed = 1;
  int workers = env_workers();
  app.add_option("--seed", seed, "Seed for every random choice")->capture_default_str();
  app.add_option("--workers", workers, "Worker threads (default: CONN_LAB_THREADS or all cores)");

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a synthetic graph");
  std::string gen_kind, gen_out;
  RmatParams rp;
  vid_t ba_n = 1024, ba_attach = 5;
  bool gen_binary = false;
  gen->add_option("kind", gen_kind, "rmat | ba")->required()->check(CLI::IsMember({"rmat", "ba"}));
  gen->add_option("--scale", rp.scale, "RMAT scale");
  gen->add_option("--ef", rp.edge_factor, "RMAT edge factor");
  gen->add_option("--a", rp.a);
  gen->add_option("--b", rp.b);
  gen->add_option("--c", rp.c);
  gen->add_option("--n", ba_n, "BA vertex count");
  gen->add_option("--attach", ba_attach, "BA edges per arriving vertex");
  gen->add_option("--out,-o", gen_out, "Output path (default stdout)");
  gen->add_flag("--binary", gen_binary, "Write the binary CSR format");

  // static
  auto* st = app.add_subcommand("static", "Static connectivity");
  std::string st_graph, st_out;
  bool st_json = false;
  SpecFlags st_spec;
  st->add_option("graph", st_graph, "Edge list or binary graph")->required();
  st_spec.add(st);
  st->add_option("--out,-o", st_out, "Write one label per line");
  st->add_flag("--json", st_json, "Print run statistics as JSON");

  // forest
  auto* fo = app.add_subcommand("forest", "Spanning forest");
  std::string fo_graph, fo_out;
  bool fo_no_verify = false, fo_json = false;
  SpecFlags fo_spec;
  fo->add_option("graph", fo_graph)->required();
  fo_spec.add(fo);
  fo->add_option("--out,-o", fo_out, "Write forest edges");
  fo->add_flag("--no-verify", fo_no_verify, "Skip the forest checker");
  fo->add_flag("--json", fo_json, "Print run statistics as JSON");

  // incremental
  auto* inc = app.add_subcommand("incremental", "Batch-incremental connectivity");
  std::string inc_stream, inc_graph;
  std::size_t inc_batch = 0;
  double inc_ratio = 0;
  bool inc_verify = false, inc_racy = false;
  SpecFlags inc_spec;
  auto* src = inc->add_option("--stream", inc_stream, "Operation file: lines 'i u v' or 'q u v'");
  inc->add_option("--from-graph", inc_graph, "Stream a graph's edges in random order")->excludes(src);
  inc->add_option("--batch-size", inc_batch, "Operations per batch (0: one batch)");
  inc->add_option("--ratio", inc_ratio, "Inserts per random query with --from-graph (0: no queries)");
  inc->add_flag("--verify", inc_verify, "Check query bits and labels against a prefix oracle");
  inc->add_flag("--racy", inc_racy, "Interleave inserts and queries");
  inc_spec.add(inc);

  // bench
  auto* be = app.add_subcommand("bench", "Benchmark sweeps (CSV)");
  std::string be_mode = "static", be_suite = "bench", be_specs, be_workers, be_batches = "0", be_ratios = "0", be_out;
  int be_repeats = 5;
  be->add_option("--mode", be_mode, "static | incremental | inspections")
      ->check(CLI::IsMember({"static", "incremental", "inspections"}));
  be->add_option("--suite", be_suite, "bench | desk | path to a graph file");
  be->add_option("--specs", be_specs, "Comma-separated spec strings (default: every spec, or every root-based one)");
  be->add_option("--worker-list", be_workers, "Comma-separated worker counts (default: --workers)");
  be->add_option("--batch-sizes", be_batches, "Comma-separated batch sizes");
  be->add_option("--ratios", be_ratios, "Comma-separated insert/query ratios");
  be->add_option("--repeats", be_repeats, "Timed repeats per row");
  be->add_option("--out,-o", be_out, "CSV path (default stdout)");

  // validate
  auto* va = app.add_subcommand("validate", "Oracle component census");
  std::string va_graph;
  va->add_option("graph", va_graph)->required();

  CLI11_PARSE(app, argc, argv);
  if (workers < 1) workers = 1;

  try {
    std::unique_ptr<std::ofstream> file;
    if (*gen) {
      EdgeList el;
      if (gen_kind == "rmat") {
        rp.seed = seed;
        el = gen_rmat(rp);
      } else {
        el = gen_ba(ba_n, ba_attach, seed);
      }
      if (gen_binary) {
        if (gen_out.empty()) throw ConfigError("--binary needs --out");
        save_binary(gen_out, build_csr(el, workers));
      } else {
        write_edge_list(output(gen_out, file), el);
      }
      std::cerr << "n=" << el.n << " m=" << el.edges.size() << "\n";
      return 0;
    }

    if (*st) {
      const Graph g = load_graph(st_graph, workers);
      const auto r = static_connectivity(g, st_spec.build(seed), StaticOptions{workers, true});
      std::cout << "components: " << r.stats.component_count << "\n";
      std::cout << "time_ms: " << r.stats.total_time() * 1e3 << "\n";
      if (st_json) std::cout << nlohmann::json(r.stats).dump(2) << "\n";
      if (!st_out.empty()) {
        auto& os = output(st_out, file);
        for (vid_t l : r.labels) os << l << "\n";
      }
      return 0;
    }

    if (*fo) {
      const Graph g = load_graph(fo_graph, workers);
      const auto r = spanning_forest(g, fo_spec.build(seed), StaticOptions{workers, true});
      std::cout << "forest_edges: " << r.forest.populated() << "\n";
      std::cout << "time_ms: " << r.stats.total_time() * 1e3 << "\n";
      if (fo_json) std::cout << nlohmann::json(r.stats).dump(2) << "\n";
      if (!fo_out.empty()) {
        auto& os = output(fo_out, file);
        for (const Edge& e : r.forest.edges()) os << e.src << " " << e.dst << "\n";
      }
      if (!fo_no_verify) {
        const auto check = check_forest(g, r.forest);
        if (!check) {
          for (const auto& f : check.failures) std::cerr << "forest check failed: " << f << "\n";
          return 2;
        }
        std::cout << "verified: yes\n";
      }
      return 0;
    }

    if (*inc) {
      std::vector<Op> ops;
      vid_t n = 0;
      if (!inc_graph.empty()) {
        const Graph g = load_graph(inc_graph, workers);
        n = g.num_vertices();
        ops = make_stream(g, inc_ratio, seed);
      } else if (!inc_stream.empty()) {
        std::ifstream in(inc_stream);
        if (!in) throw Error("cannot open " + inc_stream);
        ops = read_op_stream(in);
      } else {
        throw ConfigError("incremental needs --stream or --from-graph");
      }
      for (const Op& op : ops) n = std::max({n, op.u + 1, op.v + 1});
      std::vector<Batch> batches = make_batches(ops, inc_batch);
      IncrementalOptions io{workers, inc_racy ? BatchMode::Racy : BatchMode::Phased};
      IncrementalConnectivity conn(n, inc_spec.build(seed), io);
      std::cout << "batch,ops,queries_true,time_ms,throughput_ops\n";
      for (std::size_t i = 0; i < batches.size(); ++i) {
        conn.apply(batches[i]);
        const double t = conn.batch_times().back();
        std::cout << i << "," << batches[i].ops.size() << "," << batches[i].results.count() << ","
                  << t * 1e3 << "," << (t > 0 ? static_cast<double>(batches[i].ops.size()) / t : 0) << "\n";
      }
      const Labels labels = conn.labels();
      std::cout << "components: " << count_components(labels) << "\n";
      if (inc_verify) {
        if (inc_racy) {
          // Racy answers are only checked for soundness against the full stream.
          for (const auto& b : batches)
            for (std::size_t i = 0; i < b.ops.size(); ++i)
              if (b.ops[i].kind == Op::Kind::Query && b.results.test(i) &&
                  labels[b.ops[i].u] != labels[b.ops[i].v]) {
                std::cerr << "verification failed: query " << b.ops[i].u << " " << b.ops[i].v
                          << " answered true but the vertices are not connected\n";
                return 2;
              }
          std::cout << "verified: yes\n";
        } else {
          const std::string err = verify_batches(n, batches, labels);
          if (!err.empty()) {
            std::cerr << "verification failed: " << err << "\n";
            return 2;
          }
          std::cout << "verified: yes\n";
        }
      }
      return 0;
    }

    if (*be) {
      std::vector<NamedGraph> graphs;
      if (be_suite == "bench") graphs = bench_suite(seed);
      else if (be_suite == "desk") graphs = desk_suite(seed);
      else graphs.push_back({be_suite, load_graph(be_suite, workers)});

      std::vector<AlgorithmSpec> specs;
      for (const auto& s : split_list(be_specs)) {
        AlgorithmSpec spec = parse_spec(s);
        spec.seed = seed;
        specs.push_back(spec);
      }
      if (specs.empty())
        for (AlgorithmSpec s : all_specs())
          if (be_mode == "static" || (s.sample == SampleKind::None && is_root_based(s))) {
            s.seed = seed;
            specs.push_back(s);
          }
      std::vector<int> wl;
      for (const auto& s : split_list(be_workers)) wl.push_back(std::stoi(s));
      if (wl.empty()) wl.push_back(workers);
      std::vector<std::size_t> bl;
      for (const auto& s : split_list(be_batches)) bl.push_back(std::stoul(s));
      std::vector<double> rl;
      for (const auto& s : split_list(be_ratios)) rl.push_back(std::stod(s));

      std::vector<CsvRow> rows;
      if (be_mode == "static") rows = sweep_static(graphs, specs, wl, be_repeats);
      else if (be_mode == "incremental") rows = sweep_incremental(graphs, specs, bl, rl, wl, be_repeats, seed);
      else
        for (const auto& g : graphs) {
          auto part = edge_inspection_report(g, specs, bl, seed);
          rows.insert(rows.end(), part.begin(), part.end());
        }
      write_csv(output(be_out, file), rows);
      return 0;
    }

    if (*va) {
      const Graph g = load_graph(va_graph, workers);
      const Labels truth = oracle_components(g);
      std::map<vid_t, vid_t> sizes;
      for (vid_t l : truth) ++sizes[l];
      vid_t largest = 0;
      for (const auto& [_, c] : sizes) largest = std::max(largest, c);
      std::cout << "vertices: " << g.num_vertices() << "\n";
      std::cout << "edges: " << g.num_edges() / 2 << "\n";
      std::cout << "components: " << sizes.size() << "\n";
      std::cout << "largest: " << largest << "\n";
      return 0;
    }
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 1;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const VerificationError& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
