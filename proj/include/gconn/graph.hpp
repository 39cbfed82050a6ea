#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "gconn/parallel.hpp"
#include "gconn/types.hpp"

namespace gconn {

struct Edge {
  vid_t src;
  vid_t dst;
  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Coordinate-list graph. Also the wire form of update batches.
struct EdgeList {
  vid_t n = 0;
  std::vector<Edge> edges;
};

// Symmetric CSR graph with sorted, deduplicated adjacency and no self-loops.
class Graph {
 public:
  Graph() : offsets_(1, 0) {}
  Graph(std::vector<eid_t> offsets, std::vector<vid_t> targets)
      : offsets_(std::move(offsets)), targets_(std::move(targets)) {}

  vid_t num_vertices() const { return static_cast<vid_t>(offsets_.size() - 1); }
  eid_t num_edges() const { return targets_.size(); }

  vid_t degree(vid_t v) const {
    return static_cast<vid_t>(offsets_[v + 1] - offsets_[v]);
  }
  std::span<const vid_t> neighbors(vid_t v) const {
    return {targets_.data() + offsets_[v], degree(v)};
  }

  const std::vector<eid_t>& offsets() const { return offsets_; }
  const std::vector<vid_t>& targets() const { return targets_; }

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<eid_t> offsets_;
  std::vector<vid_t> targets_;
};

// Symmetrizes, drops self-loops, merges duplicates and sorts each adjacency.
inline Graph build_csr(const EdgeList& el, int workers = 1) {
  if (el.n > kMaxVertices)
    throw MalformedInput("vertex count " + std::to_string(el.n) +
                         " exceeds the 2^31 limit");
  const vid_t n = el.n;
  std::vector<eid_t> fill(static_cast<std::size_t>(n) + 1, 0);
  for (const Edge& e : el.edges) {
    if (e.src >= n || e.dst >= n)
      throw MalformedInput("edge (" + std::to_string(e.src) + ", " +
                           std::to_string(e.dst) + ") has an endpoint >= n = " +
                           std::to_string(n));
    if (e.src == e.dst) continue;
    ++fill[e.src + 1];
    ++fill[e.dst + 1];
  }
  for (vid_t v = 0; v < n; ++v) fill[v + 1] += fill[v];

  std::vector<vid_t> scratch(fill[n]);
  {
    std::vector<eid_t> pos(fill.begin(), fill.end() - 1);
    for (const Edge& e : el.edges) {
      if (e.src == e.dst) continue;
      scratch[pos[e.src]++] = e.dst;
      scratch[pos[e.dst]++] = e.src;
    }
  }

  std::vector<eid_t> offsets(static_cast<std::size_t>(n) + 1, 0);
  parallel_for(vid_t{0}, n, workers, [&](vid_t v) {
    auto first = scratch.begin() + static_cast<std::ptrdiff_t>(fill[v]);
    auto last = scratch.begin() + static_cast<std::ptrdiff_t>(fill[v + 1]);
    std::sort(first, last);
    offsets[v + 1] = static_cast<eid_t>(std::unique(first, last) - first);
  });
  for (vid_t v = 0; v < n; ++v) offsets[v + 1] += offsets[v];

  std::vector<vid_t> targets(offsets[n]);
  parallel_for(vid_t{0}, n, workers, [&](vid_t v) {
    std::copy_n(scratch.begin() + static_cast<std::ptrdiff_t>(fill[v]),
                offsets[v + 1] - offsets[v],
                targets.begin() + static_cast<std::ptrdiff_t>(offsets[v]));
  });
  return Graph(std::move(offsets), std::move(targets));
}

// Lists every undirected edge once, as (u, v) with u < v.
inline EdgeList to_edge_list(const Graph& g) {
  EdgeList el;
  el.n = g.num_vertices();
  el.edges.reserve(g.num_edges() / 2);
  for (vid_t u = 0; u < el.n; ++u)
    for (vid_t v : g.neighbors(u))
      if (u < v) el.edges.push_back({u, v});
  return el;
}

inline bool has_edge(const Graph& g, vid_t u, vid_t v) {
  if (u >= g.num_vertices() || v >= g.num_vertices()) return false;
  auto nbrs = g.neighbors(u);
  return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

// ---------------------------------------------------------------------------
// Text edge lists: one "u v" pair per line. Lines starting with '#' or '%'
// are comments, except a SNAP-style "# Nodes: N" line which fixes n.

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

inline bool parse_u64(std::string_view tok, std::uint64_t& out) {
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return ec == std::errc() && p == tok.data() + tok.size();
}

// Returns the vertex count declared by a "# Nodes: N" comment, or 0.
inline std::uint64_t header_vertex_count(std::string_view line) {
  line.remove_prefix(1);
  line = trim(line);
  constexpr std::string_view key = "Nodes:";
  if (line.substr(0, key.size()) != key) return 0;
  line = trim(line.substr(key.size()));
  auto end = line.find_first_of(" \t");
  std::uint64_t n = 0;
  return parse_u64(line.substr(0, end), n) ? n : 0;
}

}  // namespace detail

inline EdgeList read_edge_list(std::istream& in) {
  EdgeList el;
  std::uint64_t declared_n = 0;
  std::uint64_t max_id = 0;
  bool any = false;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line = detail::trim(raw);
    if (line.empty()) continue;
    if (line.front() == '#' || line.front() == '%') {
      declared_n = std::max(declared_n, detail::header_vertex_count(line));
      continue;
    }
    std::array<std::string_view, 2> tok;
    std::size_t count = 0;
    std::size_t pos = 0;
    while (pos < line.size()) {
      auto b = line.find_first_not_of(" \t,", pos);
      if (b == std::string_view::npos) break;
      auto e = line.find_first_of(" \t,", b);
      if (e == std::string_view::npos) e = line.size();
      if (count == 2) throw ParseError("expected two vertex ids, found more", line_no);
      tok[count++] = line.substr(b, e - b);
      pos = e;
    }
    if (count != 2) throw ParseError("expected two vertex ids", line_no);
    std::uint64_t u = 0, v = 0;
    if (!detail::parse_u64(tok[0], u))
      throw ParseError("unparsable vertex id '" + std::string(tok[0]) + "'", line_no);
    if (!detail::parse_u64(tok[1], v))
      throw ParseError("unparsable vertex id '" + std::string(tok[1]) + "'", line_no);
    if (u >= kMaxVertices || v >= kMaxVertices)
      throw ParseError("vertex id exceeds the 2^31 limit", line_no);
    el.edges.push_back({static_cast<vid_t>(u), static_cast<vid_t>(v)});
    max_id = std::max({max_id, u, v});
    any = true;
  }
  const std::uint64_t n = std::max<std::uint64_t>(declared_n, any ? max_id + 1 : 0);
  if (n > kMaxVertices) throw MalformedInput("vertex count exceeds the 2^31 limit");
  el.n = static_cast<vid_t>(n);
  return el;
}

inline EdgeList load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return read_edge_list(in);
}

inline void write_edge_list(std::ostream& out, const EdgeList& el) {
  out << "# Nodes: " << el.n << " Edges: " << el.edges.size() << '\n';
  for (const Edge& e : el.edges) out << e.src << ' ' << e.dst << '\n';
}

inline void save_edge_list(const std::string& path, const EdgeList& el) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  write_edge_list(out, el);
}

// ---------------------------------------------------------------------------
// Binary CSR: "GCN1", n (u64 LE), m (u64 LE), offsets (n+1 x u64 LE),
// targets (m x u32 LE).

inline constexpr std::array<char, 4> kBinaryMagic = {'G', 'C', 'N', '1'};

namespace detail {

template <typename T>
void put_le(std::ostream& out, T value) {
  std::array<char, sizeof(T)> bytes;
  for (std::size_t i = 0; i < sizeof(T); ++i)
    bytes[i] = static_cast<char>((static_cast<std::uint64_t>(value) >> (8 * i)) & 0xff);
  out.write(bytes.data(), sizeof(T));
}

template <typename T>
T get_le(std::istream& in) {
  std::array<unsigned char, sizeof(T)> bytes{};
  in.read(reinterpret_cast<char*>(bytes.data()), sizeof(T));
  if (!in) throw MalformedInput("truncated binary graph");
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i)
    v |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
  return static_cast<T>(v);
}

}  // namespace detail

inline void write_binary(std::ostream& out, const Graph& g) {
  out.write(kBinaryMagic.data(), kBinaryMagic.size());
  detail::put_le<std::uint64_t>(out, g.num_vertices());
  detail::put_le<std::uint64_t>(out, g.num_edges());
  for (eid_t off : g.offsets()) detail::put_le<std::uint64_t>(out, off);
  for (vid_t t : g.targets()) detail::put_le<std::uint32_t>(out, t);
}

inline Graph read_binary(std::istream& in) {
  std::array<char, 4> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kBinaryMagic) throw MalformedInput("bad magic, expected GCN1");
  const auto n = detail::get_le<std::uint64_t>(in);
  const auto m = detail::get_le<std::uint64_t>(in);
  if (n > kMaxVertices) throw MalformedInput("vertex count exceeds the 2^31 limit");
  std::vector<eid_t> offsets(n + 1);
  for (auto& off : offsets) off = detail::get_le<std::uint64_t>(in);
  if (offsets.front() != 0 || offsets.back() != m)
    throw MalformedInput("offsets must start at 0 and end at m");
  if (!std::is_sorted(offsets.begin(), offsets.end()))
    throw MalformedInput("offsets must be nondecreasing");
  std::vector<vid_t> targets(m);
  for (auto& t : targets) {
    t = detail::get_le<std::uint32_t>(in);
    if (t >= n) throw MalformedInput("edge target out of range");
  }
  return Graph(std::move(offsets), std::move(targets));
}

inline void save_binary(const std::string& path, const Graph& g) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  write_binary(out, g);
}

// Loads either format, sniffing the binary magic.
inline Graph load_graph(const std::string& path, int workers = 1) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::array<char, 4> head{};
  in.read(head.data(), head.size());
  const bool binary = in.gcount() == 4 && head == kBinaryMagic;
  in.clear();
  in.seekg(0);
  if (binary) return read_binary(in);
  return build_csr(read_edge_list(in), workers);
}

}  // namespace gconn
