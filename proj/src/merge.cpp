#include "covplan/merge.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <tuple>

namespace covplan {

namespace {

constexpr const char* kModule = "cell_merging";

using PointKey = std::pair<double, double>;
using EdgeKey = std::tuple<double, double, double, double>;

PointKey key_of(const Point2D& p) { return {p.x, p.y}; }

EdgeKey key_of(const Point2D& a, const Point2D& b) { return {a.x, a.y, b.x, b.y}; }

EdgeKey reversed(const EdgeKey& k) {
  return {std::get<2>(k), std::get<3>(k), std::get<0>(k), std::get<1>(k)};
}

/// Directed boundary edges of a cell set with interior shared edges cancelled
/// (a shared cut appears in its two cells with opposite directions).
std::map<EdgeKey, int> boundary_multiset(const std::vector<Cell>& cells,
                                         const std::vector<std::size_t>& members) {
  std::map<EdgeKey, int> edges;
  for (std::size_t m : members) {
    const Ring& ring = cells[m].boundary;
    for (std::size_t i = 0; i < ring.size(); ++i) {
      Segment e = ring.edge(i);
      EdgeKey fwd = key_of(e.a, e.b);
      EdgeKey rev = reversed(fwd);
      auto it = edges.find(rev);
      if (it != edges.end()) {
        if (--it->second == 0) edges.erase(it);
      } else {
        ++edges[fwd];
      }
    }
  }
  return edges;
}

/// Stitches the cancelled edge multiset into a single simple ring, or returns
/// nullopt when it does not form one clean cycle.
std::optional<Ring> stitch_single_cycle(const std::map<EdgeKey, int>& edges) {
  std::map<PointKey, std::pair<Point2D, Point2D>> successor;  // from -> (from, to)
  for (const auto& [key, count] : edges) {
    if (count != 1) return std::nullopt;
    Point2D a{std::get<0>(key), std::get<1>(key)};
    Point2D b{std::get<2>(key), std::get<3>(key)};
    if (!successor.emplace(key_of(a), std::make_pair(a, b)).second) return std::nullopt;
  }
  if (successor.empty()) return std::nullopt;

  std::vector<Point2D> cycle;
  PointKey start = successor.begin()->first;
  PointKey cur = start;
  do {
    auto it = successor.find(cur);
    if (it == successor.end()) return std::nullopt;
    cycle.push_back(it->second.first);
    cur = key_of(it->second.second);
    if (cycle.size() > successor.size()) return std::nullopt;
  } while (cur != start);
  if (cycle.size() != successor.size()) return std::nullopt;  // extra cycles exist

  try {
    return Ring(std::move(cycle));
  } catch (const PlanningError&) {
    return std::nullopt;
  }
}

/// Exact monotonicity test: the crossing count must be 2 at the midpoint of
/// every gap between consecutive distinct vertex levels. Counts are constant
/// inside each gap, so this finite set of probes is conclusive.
bool is_sweep_monotone(const Ring& ring) {
  std::vector<double> ys;
  ys.reserve(ring.size());
  for (const Point2D& p : ring.vertices()) ys.push_back(p.y);
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
  for (std::size_t k = 0; k + 1 < ys.size(); ++k) {
    double y = (ys[k] + ys[k + 1]) / 2.0;
    int count = 0;
    for (std::size_t i = 0; i < ring.size(); ++i) {
      const Point2D& a = ring.vertex(i);
      const Point2D& b = ring.vertex((i + 1) % ring.size());
      if ((a.y > y) != (b.y > y)) ++count;
    }
    if (count != 2) return false;
  }
  return true;
}

}  // namespace

std::vector<std::size_t> AdjacencyGraph::neighbors(std::size_t node) const {
  std::vector<std::size_t> out;
  for (const Edge& e : edges) {
    if (e.i == node) out.push_back(e.j);
    if (e.j == node) out.push_back(e.i);
  }
  std::sort(out.begin(), out.end());
  return out;
}

AdjacencyGraph build_adjacency(const std::vector<Cell>& cells) {
  AdjacencyGraph graph;
  graph.node_count = cells.size();
  double eps = 0.0;
  for (const Cell& c : cells) eps = std::max(eps, c.boundary.point_tolerance());

  for (std::size_t i = 0; i < cells.size(); ++i) {
    for (std::size_t j = i + 1; j < cells.size(); ++j) {
      for (const Segment& p : cells[i].partition_edges) {
        bool found = false;
        for (const Segment& q : cells[j].partition_edges) {
          if (distance(p.a, q.a) <= eps && distance(p.b, q.b) <= eps) {
            graph.edges.push_back({i, j, p});
            found = true;
            break;
          }
        }
        if (found) break;
      }
    }
  }
  return graph;
}

std::vector<MergedRegion> merge_components(const AdjacencyGraph& graph,
                                           const std::vector<Cell>& cells) {
  if (graph.node_count != cells.size()) {
    throw PlanningError(ErrorCode::InvalidGeometry, kModule,
                        "adjacency graph does not match the cell list");
  }
  std::vector<bool> visited(cells.size(), false);
  std::vector<MergedRegion> regions;

  for (std::size_t seed = 0; seed < cells.size(); ++seed) {
    if (visited[seed]) continue;
    visited[seed] = true;
    std::vector<std::size_t> members = {seed};

    // Depth-first growth; neighbors tried in ascending index order.
    auto grow = [&](auto&& self, std::size_t at) -> void {
      for (std::size_t nb : graph.neighbors(at)) {
        if (visited[nb]) continue;
        std::vector<std::size_t> candidate = members;
        candidate.push_back(nb);
        std::optional<Ring> merged = stitch_single_cycle(boundary_multiset(cells, candidate));
        if (!merged || !is_sweep_monotone(*merged)) continue;
        members.push_back(nb);
        visited[nb] = true;
        self(self, nb);
      }
    };
    grow(grow, seed);

    std::optional<Ring> boundary = stitch_single_cycle(boundary_multiset(cells, members));
    if (!boundary) {
      throw PlanningError(ErrorCode::NonSimpleUnion, kModule,
                          "deleting shared edges produced a non-simple boundary");
    }
    regions.push_back({std::move(*boundary), std::move(members)});
  }
  return regions;
}

}  // namespace covplan
