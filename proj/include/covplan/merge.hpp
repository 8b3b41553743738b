#pragma once

#include <cstddef>
#include <vector>

#include "covplan/decompose.hpp"
#include "covplan/geometry.hpp"

namespace covplan {

/// Cell adjacency over shared partition edges.
struct AdjacencyGraph {
  struct Edge {
    std::size_t i, j;  // i < j
    Segment shared;
  };
  std::size_t node_count = 0;
  std::vector<Edge> edges;

  std::vector<std::size_t> neighbors(std::size_t node) const;
};

/// Two cells are adjacent iff they share at least two vertices along a common
/// partition edge, i.e. a whole cut segment.
AdjacencyGraph build_adjacency(const std::vector<Cell>& cells);

/// Union of adjacent cells that remains sweep-monotone. The shared partition
/// edges are removed from the boundary.
struct MergedRegion {
  Ring boundary;  // frame coordinates
  std::vector<std::size_t> member_cells;
};

/// Depth-first traversal from the lowest-index unvisited cell, absorbing a
/// neighbor only when the union still meets every horizontal line in exactly
/// two points. Every cell ends up in exactly one region.
std::vector<MergedRegion> merge_components(const AdjacencyGraph& graph,
                                           const std::vector<Cell>& cells);

}  // namespace covplan
