#include <gtest/gtest.h>

#include <numeric>
#include <random>
#include <set>

#include "gconn/bench.hpp"
#include "gconn/driver.hpp"
#include "gconn/generators.hpp"
#include "gconn/validate.hpp"

using namespace gconn;

namespace {

AlgorithmSpec spec(const char* s) { return parse_spec(s); }

// Components of the first `count` inserts of a stream, by plain union-find.
Labels prefix_oracle(vid_t n, const std::vector<Edge>& inserted) { return oracle_union_find({n, inserted}); }

}  // namespace

TEST(Spec, AllSpecsCount) {
  const auto all = all_specs();
  EXPECT_EQ(all.size(), 204u);
  std::set<std::string> names;
  for (const auto& s : all) names.insert(to_string(s));
  EXPECT_EQ(names.size(), all.size());
}

TEST(Spec, RoundTrip) {
  for (const auto& s : all_specs()) EXPECT_EQ(parse_spec(to_string(s)), s) << to_string(s);
  AlgorithmSpec r = spec("kout_rand+async+halve");
  EXPECT_EQ(r.kout_mode, KOutMode::FirstPlusRandom);
  EXPECT_EQ(to_string(r), "kout_rand+async+halve");
}

TEST(Spec, Examples) {
  const auto a = spec("kout+async+halve");
  EXPECT_EQ(a.sample, SampleKind::KOut);
  EXPECT_EQ(a.uf.unite, UnionKind::Async);
  EXPECT_EQ(a.uf.find, FindKind::AtomicHalve);
  const auto b = spec("none+rem_cas+split+splice");
  EXPECT_EQ(b.uf.unite, UnionKind::RemCAS);
  EXPECT_EQ(b.uf.splice, SpliceKind::SpliceAtomic);
  EXPECT_EQ(spec("hb+PRS").lt, *parse_lt_variant("PRS"));
  EXPECT_EQ(spec("bfs+sv").finish, FinishKind::SV);
}

TEST(Spec, Rejected) {
  for (const char* bad : {"kout", "foo+async", "none+async+nosuch", "none+rem_lock+compress+splice",
                          "none+sv+naive", "none+cusf", "none+async+naive+none+x", "none+jtb+halve"}) {
    try {
      parse_spec(bad);
      ADD_FAILURE() << bad;
    } catch (const ConfigError& e) {
      EXPECT_NE(std::string(e.what()).find("sample+finish"), std::string::npos) << bad;
    }
  }
}

TEST(Static, TwoDisjointEdgesEverySpec) {
  const Graph g = build_csr({4, {{0, 1}, {2, 3}}});
  for (const auto& s : all_specs()) {
    const auto r = static_connectivity(g, s);
    EXPECT_EQ(r.labels, (Labels{0, 0, 2, 2})) << to_string(s);
    EXPECT_EQ(r.stats.component_count, 2u);
  }
}

TEST(Static, EmptyGraphEverySpec) {
  const Graph g = build_csr({4, {}});
  for (const auto& s : all_specs()) EXPECT_EQ(static_connectivity(g, s).labels, make_set(4)) << to_string(s);
}

TEST(Static, ZeroVertices) {
  const Graph g = build_csr({0, {}});
  for (const auto& s : all_specs()) EXPECT_TRUE(static_connectivity(g, s).labels.empty());
}

TEST(Static, InvalidSpecRejectedBeforeWork) {
  AlgorithmSpec s;
  s.uf = {UnionKind::RemLock, FindKind::Compress, SpliceKind::SpliceAtomic};
  EXPECT_THROW(static_connectivity(build_csr(gen_path(3)), s), ConfigError);
  AlgorithmSpec k;
  k.sample = SampleKind::KOut;
  k.k = 0;
  EXPECT_THROW(static_connectivity(build_csr(gen_path(3)), k), ConfigError);
}

TEST(Static, EverySpecMatchesOracleOnMixedGraph) {
  const Graph g = build_csr(permute_vertices(
      disjoint_copies(gen_rmat({8, 4, 0.5, 0.1, 0.1, 2}), 3), 7));
  const Labels truth = oracle_components(g);
  for (const auto& s : all_specs())
    for (int w : {1, 3}) EXPECT_EQ(static_connectivity(g, s, {w, true}).labels, truth) << to_string(s) << " " << w;
}

TEST(Static, StatsArePopulated) {
  const Graph g = build_csr(gen_rmat({10, 8, 0.5, 0.1, 0.1, 4}));
  const auto r = static_connectivity(g, spec("kout+async+split"));
  const auto& st = r.stats;
  EXPECT_EQ(st.algorithm, "kout+async+split");
  EXPECT_TRUE(st.phase_times.count("sample") && st.phase_times.count("finish") && st.phase_times.count("finalize"));
  EXPECT_GE(st.cov, 0.0);
  EXPECT_LE(st.cov, 1.0);
  EXPECT_GE(st.ic, 0.0);
  EXPECT_LE(st.ic, 1.0);
  EXPECT_GE(st.sampling_ratio, 0.0);
  EXPECT_LE(st.sampling_ratio, 1.0);
  EXPECT_EQ(st.component_count, count_components(oracle_components(g)));
  EXPECT_EQ(st.vertices, g.num_vertices());
  EXPECT_EQ(st.edges, g.num_edges());
}

TEST(Static, NoSamplingMetrics) {
  const Graph g = build_csr(gen_path(10));
  const auto st = static_connectivity(g, spec("none+async+naive")).stats;
  EXPECT_DOUBLE_EQ(st.cov, 0.1);
  EXPECT_DOUBLE_EQ(st.ic, 1.0);
  EXPECT_EQ(st.edge_inspections.at("sample"), 0u);
}

TEST(Static, BfsReportsSource) {
  const Graph g = build_csr(gen_star(30));
  const auto st = static_connectivity(g, spec("bfs+async+naive")).stats;
  ASSERT_TRUE(st.bfs_source.has_value());
  EXPECT_EQ(*st.bfs_source, 0u);
  EXPECT_EQ(*st.bfs_reached, 30u);
  EXPECT_DOUBLE_EQ(st.cov, 1.0);
  EXPECT_DOUBLE_EQ(st.ic, 0.0);
  EXPECT_EQ(st.edge_inspections.at("finish"), 0u);
}

TEST(FinishPhase, SkipsEverythingWhenAllSettled) {
  const Graph g = build_csr(gen_clique(6));
  for (const auto& s : all_specs()) {
    if (s.sample != SampleKind::None) continue;
    Labels labels(6, 0);
    UnionFind uf(labels, sampling_union(s));
    InspectionCounter count;
    FinishContext ctx{1, &uf, &count, nullptr, 0};
    finish_phase(g, labels, 0, s, ctx);
    EXPECT_EQ(count.total(), 0u) << to_string(s);
  }
}

TEST(FinishPhase, UnionInspectionsEqualActiveDegreeSum) {
  const Graph g = build_csr(gen_rmat({12, 8, 0.5, 0.1, 0.1, 5}));
  // No sampling: every adjacency entry once.
  EXPECT_EQ(static_connectivity(g, spec("none+async+split")).stats.edge_inspections.at("finish"), g.num_edges());
  for (const char* name : {"kout+async+split", "kout+rem_cas+halve+splice", "hb+early+halve", "bfs+hooks+naive"}) {
    const AlgorithmSpec s = spec(name);
    Labels labels = make_set(g.num_vertices());
    if (s.sample == SampleKind::KOut) kout_sample(g, labels, s.uf, s.k, s.kout_mode, {1, s.seed});
    if (s.sample == SampleKind::HB) hb_sample(g, labels, s.uf, s.hb_edges, {1, s.seed});
    if (s.sample == SampleKind::BFS) bfs_sample(g, labels, s.bfs_probes, {1, s.seed});
    const vid_t l_max = most_frequent_label(labels);
    std::uint64_t expect = 0;
    for (vid_t v = 0; v < g.num_vertices(); ++v)
      if (labels[v] != l_max) expect += g.degree(v);
    EXPECT_EQ(static_connectivity(g, s).stats.edge_inspections.at("finish"), expect) << name;
  }
}

TEST(Forest, Triangle) {
  const Graph g = build_csr(gen_clique(3));
  for (const auto& s : all_specs()) {
    if (!is_root_based(s)) continue;
    const auto r = spanning_forest(g, s);
    const auto edges = r.forest.edges();
    ASSERT_EQ(edges.size(), 2u) << to_string(s);
    for (const Edge& e : edges) EXPECT_TRUE(has_edge(g, e.src, e.dst));
    EXPECT_TRUE(check_forest(g, r.forest).ok()) << to_string(s);
  }
}

TEST(Forest, TreeInputGivesItsOwnEdges) {
  const Graph g = build_csr(permute_vertices(gen_ba(200, 1, 4), 2));
  std::set<std::pair<vid_t, vid_t>> tree;
  for (const Edge& e : to_edge_list(g).edges) tree.insert({e.src, e.dst});
  for (const auto& s : all_specs()) {
    if (!is_root_based(s)) continue;
    const auto r = spanning_forest(g, s, {2, false});
    std::set<std::pair<vid_t, vid_t>> got;
    for (const Edge& e : r.forest.edges()) got.insert({std::min(e.src, e.dst), std::max(e.src, e.dst)});
    EXPECT_EQ(got, tree) << to_string(s);
  }
}

TEST(Forest, NonRootBasedRejected) {
  const Graph g = build_csr(gen_path(3));
  EXPECT_THROW(spanning_forest(g, spec("none+lp")), ConfigError);
  EXPECT_THROW(spanning_forest(g, spec("kout+stergiou")), ConfigError);
  EXPECT_THROW(spanning_forest(g, spec("none+euf")), ConfigError);
  EXPECT_NO_THROW(spanning_forest(g, spec("none+prs")));
}

TEST(Forest, MultiComponentEveryRootBasedSpec) {
  const Graph g = build_csr(permute_vertices(disjoint_copies(gen_gnp(80, 0.05, 3), 4), 9));
  const Labels truth = oracle_components(g);
  for (const auto& s : all_specs()) {
    if (!is_root_based(s)) continue;
    for (int w : {1, 4}) {
      const auto r = spanning_forest(g, s, {w, false});
      const auto check = check_forest(g, r.forest, truth);
      EXPECT_TRUE(check.ok()) << to_string(s) << ": " << (check.ok() ? "" : check.failures[0]);
      EXPECT_EQ(r.stats.component_count, count_components(truth));
    }
  }
}

TEST(Incremental, InsertThenQuerySameBatch) {
  for (const auto& s : all_specs()) {
    if (s.sample != SampleKind::None || !is_root_based(s)) continue;
    std::vector<Batch> batches{{{insert_op(0, 1), query_op(0, 1)}, {}}};
    incremental(nullptr, s, batches);
    EXPECT_FALSE(batches[0].results.test(0)) << to_string(s);
    EXPECT_TRUE(batches[0].results.test(1)) << to_string(s);
  }
}

TEST(Incremental, QueryUntouchedVertices) {
  std::vector<Batch> batches{{{insert_op(0, 1)}, {}}, {{query_op(2, 3)}, {}}};
  const auto r = incremental(nullptr, spec("none+async+naive"), batches);
  EXPECT_FALSE(batches[1].results.test(0));
  EXPECT_EQ(r.labels, (Labels{0, 0, 2, 3}));
}

TEST(Incremental, SelfQueryIsTrue) {
  std::vector<Batch> batches{{{query_op(5, 5)}, {}}};
  incremental(nullptr, spec("none+sv"), batches);
  EXPECT_TRUE(batches[0].results.test(0));
}

TEST(Incremental, InitialGraph) {
  const Graph init = build_csr({6, {{0, 1}, {2, 3}}});
  std::vector<Batch> batches{{{query_op(0, 1), query_op(1, 2), insert_op(1, 2), query_op(0, 3)}, {}}};
  const auto r = incremental(&init, spec("none+rem_cas+split+halve_one"), batches);
  // Inserts run before queries, so 1-2 already sees the new edge.
  EXPECT_TRUE(batches[0].results.test(0));
  EXPECT_TRUE(batches[0].results.test(1));
  EXPECT_FALSE(batches[0].results.test(2));
  EXPECT_TRUE(batches[0].results.test(3));
  EXPECT_EQ(r.labels, (Labels{0, 0, 0, 0, 4, 5}));
}

TEST(Incremental, RejectedConfigurations) {
  IncrementalOptions racy{2, BatchMode::Racy};
  EXPECT_THROW(IncrementalConnectivity(4, spec("none+rem_lock+split+splice"), racy), ConfigError);
  EXPECT_THROW(IncrementalConnectivity(4, spec("none+rem_cas+naive+splice"), racy), ConfigError);
  EXPECT_THROW(IncrementalConnectivity(4, spec("none+sv"), racy), ConfigError);
  EXPECT_THROW(IncrementalConnectivity(4, spec("none+lp")), ConfigError);
  EXPECT_NO_THROW(IncrementalConnectivity(4, spec("none+rem_cas+naive+splice")));
  EXPECT_NO_THROW(IncrementalConnectivity(4, spec("none+async+compress"), racy));
  IncrementalConnectivity inc(4, spec("none+async+naive"));
  Batch b{{insert_op(0, 4)}, {}};
  EXPECT_THROW(inc.apply(b), MalformedInput);
}

TEST(Incremental, RmatTenBatchPrefixOracle) {
  const Graph g = build_csr(gen_rmat({10, 4, 0.5, 0.1, 0.1, 8}));
  const vid_t n = g.num_vertices();
  const auto stream = make_stream(g, 2.0, 3);
  const auto pristine = make_batches(stream, (stream.size() + 9) / 10);
  ASSERT_EQ(pristine.size(), 10u);
  for (const auto& s : all_specs()) {
    if (s.sample != SampleKind::None || !is_root_based(s)) continue;
    for (int w : {1, 4}) {
      auto batches = pristine;
      IncrementalConnectivity inc(n, s, {w, BatchMode::Phased});
      std::vector<Edge> inserted;
      for (auto& b : batches) {
        inc.apply(b);
        for (const Op& op : b.ops)
          if (op.kind == Op::Kind::Insert) inserted.push_back({op.u, op.v});
        const Labels truth = prefix_oracle(n, inserted);
        ASSERT_TRUE(partition_equal(inc.labels(), truth)) << to_string(s) << " " << w;
        for (std::size_t i = 0; i < b.ops.size(); ++i) {
          const bool expect = b.ops[i].kind == Op::Kind::Query && truth[b.ops[i].u] == truth[b.ops[i].v];
          ASSERT_EQ(b.results.test(i), expect) << to_string(s) << " op " << i;
        }
      }
      EXPECT_EQ(verify_batches(n, batches, inc.labels()), "");
    }
  }
}

TEST(Incremental, RacyModeIsSound) {
  const Graph g = build_csr(gen_rmat({10, 4, 0.5, 0.1, 0.1, 9}));
  const vid_t n = g.num_vertices();
  auto batches = make_batches(make_stream(g, 1.0, 4), 500);
  IncrementalConnectivity inc(n, spec("none+async+split"), {4, BatchMode::Racy});
  for (auto& b : batches) inc.apply(b);
  const Labels final_labels = inc.labels();
  EXPECT_TRUE(partition_equal(final_labels, oracle_components(g)));
  for (const auto& b : batches)
    for (std::size_t i = 0; i < b.ops.size(); ++i)
      if (b.results.test(i)) {
        EXPECT_EQ(b.ops[i].kind, Op::Kind::Query);
        EXPECT_EQ(final_labels[b.ops[i].u], final_labels[b.ops[i].v]);
      }
}

TEST(Incremental, UnionFinishInspectsEachInsertOnce) {
  const Graph g = build_csr(gen_gnp(500, 0.02, 2));
  auto batches = make_batches(make_stream(g, 0, 1), 300);
  IncrementalConnectivity inc(500, spec("none+early+compress"));
  for (auto& b : batches) inc.apply(b);
  EXPECT_EQ(inc.stats().edge_inspections.at("finish"), g.num_edges() / 2);
  std::uint64_t sum = 0;
  for (auto c : inc.batch_inspections()) sum += c;
  EXPECT_EQ(sum, g.num_edges() / 2);
}

TEST(LabelFinalization, Examples) {
  Labels p{0, 0, 1};
  EXPECT_EQ(label_finalization(p), (Labels{0, 0, 0}));
  Labels id = make_set(5);
  EXPECT_EQ(label_finalization(id), make_set(5));
  std::mt19937 rng(3);
  Labels q(200);
  for (vid_t v = 0; v < 200; ++v) q[v] = v ? static_cast<vid_t>(rng() % (v + 1)) : 0;
  Labels once = q;
  label_finalization(once);
  Labels twice = once;
  label_finalization(twice, 4);
  EXPECT_EQ(once, twice);
}

TEST(Determinism, SingleWorkerRepeats) {
  const Graph g = build_csr(gen_rmat({11, 6, 0.5, 0.1, 0.1, 6}));
  for (const char* name : {"kout_rand+jtb+two_try", "bfs+prs", "hb+sv", "kout+rem_lock+split+splice"}) {
    const AlgorithmSpec s = spec(name);
    EXPECT_EQ(static_connectivity(g, s).labels, static_connectivity(g, s).labels);
    if (is_root_based(s)) { EXPECT_EQ(spanning_forest(g, s).forest, spanning_forest(g, s).forest) << name; }
  }
}
