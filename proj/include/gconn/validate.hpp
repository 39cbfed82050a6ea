#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "json.hpp"

#include "gconn/dset.hpp"
#include "gconn/forest.hpp"
#include "gconn/graph.hpp"

namespace gconn {

/// Per-run measurements. Times are in seconds.
struct RunStats {
  std::string algorithm;
  std::map<std::string, double> phase_times;
  std::map<std::string, std::uint64_t> edge_inspections;
  vid_t vertices = 0;
  eid_t edges = 0;
  vid_t l_max = kUninitialized;
  double cov = 0;            // fraction of vertices in the most frequent sampled label
  double ic = 0;             // fraction of edges whose sampled labels differ
  double sampling_ratio = 0;  // sampling time over total time
  int rounds = 0;
  vid_t component_count = 0;
  bool reference_approximate = false;
  std::optional<vid_t> bfs_source;
  std::optional<vid_t> bfs_reached;

  double total_time() const {
    double t = 0;
    for (const auto& [_, s] : phase_times) t += s;
    return t;
  }
  std::uint64_t total_inspections() const {
    std::uint64_t t = 0;
    for (const auto& [_, c] : edge_inspections) t += c;
    return t;
  }
};

inline void to_json(nlohmann::json& j, const RunStats& s) {
  j = nlohmann::json{{"algorithm", s.algorithm},
                     {"vertices", s.vertices},
                     {"edges", s.edges},
                     {"phase_times", s.phase_times},
                     {"total_time", s.total_time()},
                     {"edge_inspections", s.edge_inspections},
                     {"cov", s.cov},
                     {"ic", s.ic},
                     {"sampling_ratio", s.sampling_ratio},
                     {"rounds", s.rounds},
                     {"component_count", s.component_count},
                     {"reference_approximate", s.reference_approximate}};
  if (s.l_max != kUninitialized) j["l_max"] = s.l_max;
  if (s.bfs_source) j["bfs_source"] = *s.bfs_source;
  if (s.bfs_reached) j["bfs_reached"] = *s.bfs_reached;
}

/// Sequential BFS oracle: every vertex gets the minimum id of its component.
inline Labels oracle_components(const Graph& g) {
  const vid_t n = g.num_vertices();
  Labels out(n, kUninitialized);
  std::vector<vid_t> queue;
  for (vid_t s = 0; s < n; ++s) {
    if (out[s] != kUninitialized) continue;
    out[s] = s;
    queue.assign(1, s);
    for (std::size_t head = 0; head < queue.size(); ++head)
      for (vid_t v : g.neighbors(queue[head]))
        if (out[v] == kUninitialized) {
          out[v] = s;
          queue.push_back(v);
        }
  }
  return out;
}

/// Second oracle: sequential union by size with path compression over an
/// edge list, canonicalized to minimum ids.
inline Labels oracle_union_find(const EdgeList& el) {
  std::vector<vid_t> parent(el.n), size(el.n, 1);
  std::iota(parent.begin(), parent.end(), vid_t{0});
  auto root = [&](vid_t x) {
    vid_t r = x;
    while (parent[r] != r) r = parent[r];
    while (parent[x] != r) x = std::exchange(parent[x], r);
    return r;
  };
  for (const Edge& e : el.edges) {
    vid_t a = root(e.src), b = root(e.dst);
    if (a == b) continue;
    if (size[a] < size[b]) std::swap(a, b);
    parent[b] = a;
    size[a] += size[b];
  }
  std::vector<vid_t> low(el.n, kUninitialized);
  for (vid_t v = 0; v < el.n; ++v) {
    const vid_t r = root(v);
    low[r] = std::min(low[r], v);
  }
  Labels out(el.n);
  for (vid_t v = 0; v < el.n; ++v) out[v] = low[root(v)];
  return out;
}

/// Rewrites any labeling to the minimum vertex id of each class.
inline Labels canonicalize(const Labels& labels) {
  std::unordered_map<vid_t, vid_t> low;
  low.reserve(labels.size());
  for (vid_t v = 0; v < labels.size(); ++v) {
    auto [it, fresh] = low.try_emplace(labels[v], v);
    if (!fresh) it->second = std::min(it->second, v);
  }
  Labels out(labels.size());
  for (vid_t v = 0; v < labels.size(); ++v) out[v] = low[labels[v]];
  return out;
}

/// True when both labelings induce the same partition.
inline bool partition_equal(const Labels& a, const Labels& b) {
  if (a.size() != b.size()) return false;
  std::unordered_map<vid_t, vid_t> ab, ba;
  for (std::size_t v = 0; v < a.size(); ++v) {
    auto [i, fi] = ab.try_emplace(a[v], b[v]);
    auto [j, fj] = ba.try_emplace(b[v], a[v]);
    if (i->second != b[v] || j->second != a[v]) return false;
  }
  return true;
}

inline vid_t count_components(const Labels& labels) {
  std::vector<vid_t> sorted = labels;
  std::sort(sorted.begin(), sorted.end());
  return static_cast<vid_t>(std::unique(sorted.begin(), sorted.end()) - sorted.begin());
}

struct ForestCheck {
  // One entry per violated clause: "(a) ...", "(b) ...", "(c) ...", "(d) ...".
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
  explicit operator bool() const { return ok(); }
};

/// Checks that `forest` is a spanning forest of g against an oracle
/// labeling: (a) every edge is in g, (b) the edges are acyclic, (c) there
/// are n - c of them, (d) they connect exactly the oracle's components.
inline ForestCheck check_forest(const Graph& g, const ForestEdges& forest, const Labels& oracle) {
  ForestCheck out;
  const vid_t n = g.num_vertices();
  auto edge_str = [](const Edge& e) {
    return "(" + std::to_string(e.src) + ", " + std::to_string(e.dst) + ")";
  };
  if (forest.slots.size() != n || oracle.size() != n) {
    out.failures.push_back("(a) forest has " + std::to_string(forest.slots.size()) +
                           " slots for " + std::to_string(n) + " vertices");
    return out;
  }
  std::vector<Edge> edges;
  for (const Edge& e : forest.edges()) {
    if (e.src >= n || e.dst >= n || !has_edge(g, e.src, e.dst)) {
      if (out.failures.empty()) out.failures.push_back("(a) edge " + edge_str(e) + " is not in the graph");
      continue;
    }
    edges.push_back(e);
  }

  std::vector<vid_t> parent(n);
  std::iota(parent.begin(), parent.end(), vid_t{0});
  auto root = [&](vid_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  bool cyclic = false;
  for (const Edge& e : edges) {
    const vid_t a = root(e.src), b = root(e.dst);
    if (a == b) {
      if (!cyclic) out.failures.push_back("(b) edge " + edge_str(e) + " closes a cycle");
      cyclic = true;
      continue;
    }
    parent[std::max(a, b)] = std::min(a, b);
  }
  const vid_t c = count_components(oracle);
  const std::size_t populated = forest.populated();
  if (populated != static_cast<std::size_t>(n - c))
    out.failures.push_back("(c) forest has " + std::to_string(populated) +
                           " edges, expected n - c = " + std::to_string(n - c));
  Labels mine(n);
  for (vid_t v = 0; v < n; ++v) mine[v] = root(v);
  if (!partition_equal(mine, oracle)) {
    std::unordered_map<vid_t, vid_t> first;  // oracle label -> first vertex seen
    for (vid_t v = 0; v < n; ++v) {
      auto [it, fresh] = first.try_emplace(oracle[v], v);
      if (!fresh && mine[v] != mine[it->second]) {
        out.failures.push_back("(d) vertices " + std::to_string(it->second) + " and " +
                               std::to_string(v) + " share a component but not a forest tree");
        return out;
      }
    }
    out.failures.push_back("(d) the forest joins vertices from different components");
  }
  return out;
}

inline ForestCheck check_forest(const Graph& g, const ForestEdges& forest) {
  return check_forest(g, forest, oracle_components(g));
}

struct SamplingStats {
  vid_t l_max = kUninitialized;
  double cov = 0;
  double ic = 0;
};

/// Brute-force cov and ic of a compressed sampled labeling. ic is the
/// fraction of edges whose endpoints carry different labels.
inline SamplingStats sampling_stats(const Graph& g, const Labels& labels) {
  SamplingStats s;
  const vid_t n = g.num_vertices();
  if (n == 0) return s;
  std::map<vid_t, vid_t> freq;
  for (vid_t l : labels) ++freq[l];
  vid_t best = n, best_count = 0;
  for (const auto& [l, c] : freq)
    if (c > best_count) best = l, best_count = c;
  s.l_max = best;
  s.cov = static_cast<double>(best_count) / n;
  if (g.num_edges() == 0) return s;
  eid_t crossing = 0;
  for (vid_t u = 0; u < n; ++u)
    for (vid_t v : g.neighbors(u))
      if (labels[u] != labels[v]) ++crossing;
  s.ic = static_cast<double>(crossing) / static_cast<double>(g.num_edges());
  return s;
}

/// Induced subgraph on the largest component, renumbered in id order.
inline EdgeList largest_component(const Graph& g) {
  const Labels comp = oracle_components(g);
  std::map<vid_t, vid_t> size;
  for (vid_t l : comp) ++size[l];
  vid_t best = 0, best_size = 0;
  for (const auto& [l, c] : size)
    if (c > best_size) best = l, best_size = c;
  std::vector<vid_t> id(g.num_vertices(), kUninitialized);
  vid_t next = 0;
  for (vid_t v = 0; v < g.num_vertices(); ++v)
    if (comp[v] == best) id[v] = next++;
  EdgeList out{next, {}};
  for (vid_t u = 0; u < g.num_vertices(); ++u)
    if (id[u] != kUninitialized)
      for (vid_t v : g.neighbors(u))
        if (u < v) out.edges.push_back({id[u], id[v]});
  return out;
}

}  // namespace gconn
