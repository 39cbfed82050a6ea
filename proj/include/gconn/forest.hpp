#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "gconn/graph.hpp"

namespace gconn {

/// Spanning-forest output. Slot r holds the edge that was processed when
/// vertex r stopped being a root; each slot is written at most once.
struct ForestEdges {
  std::vector<std::optional<Edge>> slots;

  ForestEdges() = default;
  explicit ForestEdges(vid_t n) : slots(n) {}

  std::size_t populated() const {
    std::size_t c = 0;
    for (const auto& s : slots) c += s.has_value();
    return c;
  }

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (const auto& s : slots)
      if (s) out.push_back(*s);
    return out;
  }

  friend bool operator==(const ForestEdges&, const ForestEdges&) = default;
};

}  // namespace gconn
