#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "gconn/graph.hpp"
#include "gconn/types.hpp"

namespace gconn {

struct RmatParams {
  int scale = 10;
  int edge_factor = 16;
  double a = 0.5;
  double b = 0.1;
  double c = 0.1;
  std::uint64_t seed = 1;
};

/// Recursive-matrix generator. Emits edge_factor * 2^scale sampled pairs;
/// at every level each quadrant weight is jittered by a uniform factor in
/// [0.9, 1.1] and the four weights renormalized.
inline EdgeList gen_rmat(const RmatParams& p) {
  if (p.scale < 1 || p.scale > 31)
    throw ConfigError("rmat scale must be in [1, 31], got " + std::to_string(p.scale));
  if (p.edge_factor < 1)
    throw ConfigError("rmat edge factor must be >= 1");
  if (p.a < 0 || p.b < 0 || p.c < 0)
    throw ConfigError("rmat probabilities must be non-negative");
  if (p.a + p.b + p.c > 1.0 + 1e-12)
    throw ConfigError("rmat probabilities sum to more than 1");
  const double d = std::max(0.0, 1.0 - p.a - p.b - p.c);

  EdgeList el;
  el.n = vid_t{1} << p.scale;
  const std::uint64_t count = static_cast<std::uint64_t>(p.edge_factor) * el.n;
  el.edges.reserve(count);

  std::mt19937_64 rng(p.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::uint64_t i = 0; i < count; ++i) {
    vid_t src = 0, dst = 0;
    for (int level = 0; level < p.scale; ++level) {
      double wa = p.a * (0.9 + 0.2 * unit(rng));
      double wb = p.b * (0.9 + 0.2 * unit(rng));
      double wc = p.c * (0.9 + 0.2 * unit(rng));
      double wd = d * (0.9 + 0.2 * unit(rng));
      const double total = wa + wb + wc + wd;
      const double r = unit(rng) * total;
      vid_t sbit = 0, dbit = 0;
      if (r < wa) {
      } else if (r < wa + wb) {
        dbit = 1;
      } else if (r < wa + wb + wc) {
        sbit = 1;
      } else {
        sbit = dbit = 1;
      }
      src = (src << 1) | sbit;
      dst = (dst << 1) | dbit;
    }
    el.edges.push_back({src, dst});
  }
  return el;
}

/// Barabasi-Albert preferential attachment. Vertex i > 0 attaches to
/// min(attach, i) distinct earlier vertices, chosen with probability
/// proportional to degree.
inline EdgeList gen_ba(vid_t n, vid_t attach, std::uint64_t seed) {
  if (attach < 1) throw ConfigError("ba attach must be >= 1");
  if (n <= attach)
    throw ConfigError("ba requires n > attach (n = " + std::to_string(n) +
                      ", attach = " + std::to_string(attach) + ")");
  if (n > kMaxVertices) throw ConfigError("ba vertex count exceeds the 2^31 limit");
  EdgeList el;
  el.n = n;
  std::mt19937_64 rng(seed);
  // Every edge endpoint appears once here, so uniform picks are degree-biased.
  std::vector<vid_t> endpoints;
  endpoints.reserve(2 * static_cast<std::size_t>(n) * attach);
  std::vector<vid_t> chosen;
  for (vid_t v = 1; v < n; ++v) {
    chosen.clear();
    if (v <= attach) {
      for (vid_t t = 0; t < v; ++t) chosen.push_back(t);
    } else {
      std::uniform_int_distribution<std::size_t> pick(0, endpoints.size() - 1);
      while (chosen.size() < attach) {
        const vid_t t = endpoints[pick(rng)];
        if (std::find(chosen.begin(), chosen.end(), t) == chosen.end())
          chosen.push_back(t);
      }
    }
    for (vid_t t : chosen) {
      el.edges.push_back({v, t});
      endpoints.push_back(v);
      endpoints.push_back(t);
    }
  }
  return el;
}

// Small deterministic families used by the test and benchmark suites.

inline EdgeList gen_path(vid_t n) {
  EdgeList el{n, {}};
  for (vid_t v = 1; v < n; ++v) el.edges.push_back({v - 1, v});
  return el;
}

inline EdgeList gen_star(vid_t n) {
  EdgeList el{n, {}};
  for (vid_t v = 1; v < n; ++v) el.edges.push_back({0, v});
  return el;
}

inline EdgeList gen_clique(vid_t n) {
  EdgeList el{n, {}};
  for (vid_t u = 0; u < n; ++u)
    for (vid_t v = u + 1; v < n; ++v) el.edges.push_back({u, v});
  return el;
}

inline EdgeList gen_grid(vid_t rows, vid_t cols) {
  EdgeList el{rows * cols, {}};
  for (vid_t r = 0; r < rows; ++r)
    for (vid_t c = 0; c < cols; ++c) {
      const vid_t v = r * cols + c;
      if (c + 1 < cols) el.edges.push_back({v, v + 1});
      if (r + 1 < rows) el.edges.push_back({v, v + cols});
    }
  return el;
}

/// Erdos-Renyi G(n, p) using geometric skips over the upper triangle.
inline EdgeList gen_gnp(vid_t n, double p, std::uint64_t seed) {
  if (p < 0 || p > 1) throw ConfigError("gnp probability must be in [0, 1]");
  EdgeList el{n, {}};
  if (p == 0 || n < 2) return el;
  std::mt19937_64 rng(seed);
  const std::uint64_t total = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  if (p == 1) return gen_clique(n);
  std::geometric_distribution<std::uint64_t> skip(p);
  std::uint64_t idx = skip(rng);
  vid_t u = 0;
  std::uint64_t row_start = 0;  // index of pair (u, u+1)
  while (idx < total) {
    while (idx >= row_start + (n - 1 - u)) {
      row_start += n - 1 - u;
      ++u;
    }
    const vid_t v = static_cast<vid_t>(u + 1 + (idx - row_start));
    el.edges.push_back({u, v});
    idx += 1 + skip(rng);
  }
  return el;
}

/// `copies` disjoint copies of `part`, copy i shifted by i * part.n.
inline EdgeList disjoint_copies(const EdgeList& part, vid_t copies) {
  EdgeList el;
  el.n = part.n * copies;
  el.edges.reserve(part.edges.size() * copies);
  for (vid_t i = 0; i < copies; ++i) {
    const vid_t shift = i * part.n;
    for (const Edge& e : part.edges) el.edges.push_back({e.src + shift, e.dst + shift});
  }
  return el;
}

/// Relabels vertices with a seeded random permutation.
inline EdgeList permute_vertices(const EdgeList& el, std::uint64_t seed) {
  std::vector<vid_t> perm(el.n);
  for (vid_t v = 0; v < el.n; ++v) perm[v] = v;
  std::mt19937_64 rng(seed);
  std::shuffle(perm.begin(), perm.end(), rng);
  EdgeList out{el.n, {}};
  out.edges.reserve(el.edges.size());
  for (const Edge& e : el.edges) out.edges.push_back({perm[e.src], perm[e.dst]});
  return out;
}

}  // namespace gconn
