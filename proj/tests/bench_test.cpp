#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>

#include "gconn/bench.hpp"
#include "gconn/generators.hpp"

using namespace gconn;

namespace {

std::vector<NamedGraph> tiny() {
  return {{"grid", build_csr(gen_grid(20, 20))}, {"two", build_csr(disjoint_copies(gen_path(50), 2))}};
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  return out;
}

}  // namespace

TEST(Median, LowerMiddle) {
  EXPECT_EQ(median({3, 1, 2}), 2);
  EXPECT_EQ(median({4, 1, 3, 2}), 2);
  EXPECT_EQ(median({}), 0);
}

TEST(SweepStatic, RowCountsAndMedian) {
  const auto g = tiny();
  const std::vector<AlgorithmSpec> specs{parse_spec("kout+async+split"), parse_spec("none+prs")};
  const auto one = sweep_static({g[0]}, specs, {1}, 5);
  ASSERT_EQ(one.size(), 2u);
  const auto rows = sweep_static(g, specs, {1, 2}, 3);
  ASSERT_EQ(rows.size(), 2u * 2 * 2);
  for (const auto& r : rows) {
    ASSERT_EQ(r.raw_ms.size(), 3u);
    std::vector<double> sorted = r.raw_ms;
    std::sort(sorted.begin(), sorted.end());
    EXPECT_EQ(r.time_ms, sorted[1]);
    const double undirected = r.graph == "grid" ? 2 * 20 * 19 : 98;
    if (r.time_ms > 0) { EXPECT_DOUBLE_EQ(r.throughput_eps, undirected / (r.time_ms / 1e3)); }
  }
  EXPECT_EQ(rows[0].graph, "grid");
  EXPECT_EQ(rows[0].spec, "kout+async+split");
  EXPECT_EQ(rows[0].find, "split");
  EXPECT_EQ(rows[2].finish, "prs");
  EXPECT_EQ(rows[2].find, "-");
  EXPECT_EQ(rows.back().components, 2u);
}

TEST(Csv, ExactHeaderAndRowShape) {
  std::ostringstream os;
  const auto rows = sweep_static({tiny()[0]}, {parse_spec("hb+sv")}, {1}, 1);
  write_csv(os, rows);
  std::istringstream in(os.str());
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  EXPECT_EQ(header,
            "graph,spec,sample,finish,find,splice,workers,batch_size,ratio,time_ms,throughput_eps,cov,ic,"
            "ratio_sampling,inspections_sample,inspections_finish,rounds,components");
  const auto cells = split(row);
  ASSERT_EQ(cells.size(), split(header).size());
  EXPECT_EQ(cells[0], "grid");
  EXPECT_EQ(cells[1], "hb+sv");
  EXPECT_EQ(cells[2], "hb");
  EXPECT_EQ(cells[3], "sv");
}

TEST(Streams, ShapeAndRatio) {
  const Graph g = build_csr(gen_grid(10, 10));
  const auto only = make_stream(g, 0, 1);
  EXPECT_EQ(only.size(), g.num_edges() / 2);
  const auto mixed = make_stream(g, 4, 1);
  const auto queries = std::count_if(mixed.begin(), mixed.end(), [](const Op& o) { return o.kind == Op::Kind::Query; });
  EXPECT_EQ(queries, 45);  // 180 inserts / 4
  EXPECT_EQ(make_stream(g, 4, 1), mixed);
}

TEST(Streams, Batching) {
  const Graph g = build_csr(gen_path(11));
  const auto ops = make_stream(g, 0, 2);
  EXPECT_EQ(make_batches(ops, 1000).size(), 1u);
  EXPECT_EQ(make_batches(ops, 0).size(), 1u);
  const auto b = make_batches(ops, 3);
  ASSERT_EQ(b.size(), 4u);
  EXPECT_EQ(b.back().ops.size(), 1u);
}

TEST(Streams, TextRoundTrip) {
  const std::vector<Op> ops{insert_op(0, 1), query_op(3, 2)};
  std::stringstream ss;
  write_op_stream(ss, ops);
  EXPECT_EQ(ss.str(), "i 0 1\nq 3 2\n");
  EXPECT_EQ(read_op_stream(ss), ops);
  std::istringstream bad("i 0 1\n# fine\nx 1 2\n");
  try {
    read_op_stream(bad);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(SweepIncremental, RowsThroughputAndOversizedBatch) {
  const auto g = tiny();
  const std::vector<AlgorithmSpec> specs{parse_spec("none+async+split"), parse_spec("none+sv")};
  const auto rows = sweep_incremental(g, specs, {50, 100000}, {0, 2}, {1}, 3, 7);
  ASSERT_EQ(rows.size(), 2u * 2 * 2 * 2);
  for (const auto& r : rows) {
    const std::size_t inserts = r.graph == "grid" ? 760 : 98;
    const std::size_t ops = inserts + (r.ratio > 0 ? inserts / 2 : 0);
    if (r.time_ms > 0) { EXPECT_DOUBLE_EQ(r.throughput_eps, ops / (r.time_ms / 1e3)); }
    EXPECT_TRUE(r.batch_size == 50 || r.batch_size == ops) << r.batch_size;
    std::vector<double> sorted = r.raw_ms;
    std::sort(sorted.begin(), sorted.end());
    EXPECT_EQ(r.time_ms, sorted[1]);
  }
}

TEST(InspectionReport, UnionFinishReadsEachEdgeOnce) {
  const NamedGraph g{"rmat", build_csr(gen_rmat({10, 6, 0.5, 0.1, 0.1, 3}))};
  const auto rows = edge_inspection_report(g, {parse_spec("none+async+naive"), parse_spec("none+rem_cas+split+splice")},
                                           {64, 1024, 0});
  ASSERT_EQ(rows.size(), 6u);
  for (const auto& r : rows) EXPECT_EQ(r.inspections_finish, g.graph.num_edges() / 2);
}

TEST(VerifyBatches, CatchesWrongBit) {
  std::vector<Batch> batches{{{insert_op(0, 1), query_op(0, 1)}, {}}};
  IncrementalConnectivity inc(2, parse_spec("none+async+naive"));
  inc.apply(batches[0]);
  EXPECT_EQ(verify_batches(2, batches, inc.labels()), "");
  batches[0].results = BitVector(2);
  EXPECT_NE(verify_batches(2, batches, inc.labels()), "");
}
