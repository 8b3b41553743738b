#include "covplan/region.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace covplan {

namespace {

constexpr const char* kModule = "region_model";

double chain_pair_clearance(const Ring& a, const Ring& b) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      best = std::min(best, segment_segment_distance(a.edge(i), b.edge(j)));
    }
  }
  return best;
}

Point2D min_vertex(const Ring& r) {
  Point2D best = r.vertex(0);
  for (const Point2D& p : r.vertices()) {
    if (p.x < best.x || (p.x == best.x && p.y < best.y)) best = p;
  }
  return best;
}

Ring oriented(const Ring& r, Orientation want) {
  return r.orientation() == want ? r : r.reversed();
}

}  // namespace

ChainSet make_chain_set(std::vector<Ring> chains) {
  BBox box{0, 0, 0, 0};
  if (!chains.empty()) {
    box = chains.front().bounds();
    for (const Ring& r : chains) {
      box.expand({r.bounds().min_x, r.bounds().min_y});
      box.expand({r.bounds().max_x, r.bounds().max_y});
    }
  }
  const double eps = point_tolerance(box);
  for (std::size_t i = 0; i < chains.size(); ++i) {
    for (std::size_t j = i + 1; j < chains.size(); ++j) {
      // Touching at even a single point breaks offset and sweep topology.
      if (chain_pair_clearance(chains[i], chains[j]) <= eps) {
        throw PlanningError(ErrorCode::ChainsIntersect, kModule,
                            "chains " + std::to_string(i) + " and " + std::to_string(j) +
                                " intersect or touch");
      }
    }
  }
  return ChainSet{std::move(chains)};
}

std::vector<std::vector<bool>> containment_matrix(const ChainSet& cs) {
  const std::size_t n = cs.chains.size();
  std::vector<std::vector<bool>> inside(n, std::vector<bool>(n, false));
  BBox box{0, 0, 0, 0};
  if (n > 0) box = cs.chains.front().bounds();
  for (const Ring& r : cs.chains) {
    box.expand({r.bounds().min_x, r.bounds().min_y});
    box.expand({r.bounds().max_x, r.bounds().max_y});
  }
  const double eps = point_tolerance(box);

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      std::size_t in = 0, out = 0, boundary = 0;
      for (const Point2D& p : cs.chains[i].vertices()) {
        switch (ring_contains_point(cs.chains[j], p, eps)) {
          case PointLocation::Inside: ++in; break;
          case PointLocation::Outside: ++out; break;
          case PointLocation::OnBoundary: ++boundary; break;
        }
      }
      if (boundary > 0 || (in > 0 && out > 0)) {
        throw PlanningError(ErrorCode::AmbiguousNesting, kModule,
                            "chain " + std::to_string(i) + " straddles chain " +
                                std::to_string(j));
      }
      inside[i][j] = (in > 0 && out == 0);
    }
  }
  return inside;
}

std::vector<RegionOfInterest> classify_chains(const ChainSet& cs) {
  const std::size_t n = cs.chains.size();
  const auto inside = containment_matrix(cs);

  std::vector<int> depth(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (inside[i][j]) ++depth[i];
    }
  }

  std::vector<RegionOfInterest> rois;
  std::vector<std::size_t> outer_of_hole(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (depth[i] % 2 != 0) continue;
    RegionOfInterest roi{oriented(cs.chains[i], Orientation::CCW), {}, depth[i]};
    // Odd-depth chains become holes of their immediate (depth-1) container.
    for (std::size_t h = 0; h < n; ++h) {
      if (depth[h] != depth[i] + 1 || !inside[h][i]) continue;
      roi.holes.push_back(oriented(cs.chains[h], Orientation::CW));
      outer_of_hole[h] = i;
    }
    std::sort(roi.holes.begin(), roi.holes.end(), [](const Ring& a, const Ring& b) {
      Point2D pa = min_vertex(a), pb = min_vertex(b);
      return pa.x < pb.x || (pa.x == pb.x && pa.y < pb.y);
    });
    rois.push_back(std::move(roi));
  }

  for (std::size_t h = 0; h < n; ++h) {
    if (depth[h] % 2 != 0 && outer_of_hole[h] == n) {
      throw PlanningError(ErrorCode::AmbiguousNesting, kModule,
                          "hole chain " + std::to_string(h) + " has no immediate container");
    }
  }

  std::sort(rois.begin(), rois.end(), [](const RegionOfInterest& a, const RegionOfInterest& b) {
    Point2D pa = min_vertex(a.outer), pb = min_vertex(b.outer);
    return pa.x < pb.x || (pa.x == pb.x && pa.y < pb.y);
  });
  return rois;
}

RegionOfInterest make_region(Ring outer, std::vector<Ring> holes) {
  std::vector<Ring> chains;
  chains.reserve(holes.size() + 1);
  chains.push_back(std::move(outer));
  for (Ring& h : holes) chains.push_back(std::move(h));
  ChainSet cs = make_chain_set(std::move(chains));

  const Ring& out = cs.chains.front();
  const double eps = out.point_tolerance();
  RegionOfInterest roi{oriented(out, Orientation::CCW), {}, 0};
  for (std::size_t h = 1; h < cs.chains.size(); ++h) {
    for (const Point2D& p : cs.chains[h].vertices()) {
      if (ring_contains_point(out, p, eps) != PointLocation::Inside) {
        throw PlanningError(ErrorCode::InvalidGeometry, kModule,
                            "explicit hole " + std::to_string(h - 1) +
                                " is not strictly inside the outer boundary");
      }
    }
    for (std::size_t g = 1; g < h; ++g) {
      if (ring_contains_point(cs.chains[g], cs.chains[h].vertex(0), eps) !=
              PointLocation::Outside ||
          ring_contains_point(cs.chains[h], cs.chains[g].vertex(0), eps) !=
              PointLocation::Outside) {
        throw PlanningError(ErrorCode::InvalidGeometry, kModule, "explicit holes are nested");
      }
    }
    roi.holes.push_back(oriented(cs.chains[h], Orientation::CW));
  }
  return roi;
}

}  // namespace covplan
