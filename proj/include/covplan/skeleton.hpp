#pragma once

#include <limits>
#include <string>
#include <vector>

#include "covplan/geometry.hpp"
#include "covplan/region.hpp"

namespace covplan {

enum class OffsetDirection { Inward, Outward };

struct OffsetSpec {
  double distance = 0.0;
  OffsetDirection direction = OffsetDirection::Inward;
};

enum class WavefrontEventKind { EdgeCollapse, Split };

struct WavefrontEvent {
  double time = 0.0;
  WavefrontEventKind kind = WavefrontEventKind::EdgeCollapse;
  Point2D location;
};

/// Trace of the polygon's edges translating at unit speed along their
/// normals. Arcs are the paths of wavefront vertices; events are the points
/// where the front changes topology.
struct StraightSkeleton {
  Ring source;
  std::vector<Segment> arcs;
  std::vector<WavefrontEvent> events;
};

/// Simulates the wavefront until it vanishes (Inward) or until `max_time`
/// (Outward, which must be finite since the front grows forever).
StraightSkeleton build_straight_skeleton(
    const Ring& ring, OffsetDirection direction,
    double max_time = std::numeric_limits<double>::infinity());

/// Wavefront snapshot at time spec.distance. Inward offsets may split into
/// several rings or vanish entirely (empty result); outward offsets grow.
/// Output rings carry the source ring's orientation.
std::vector<Ring> offset_ring(const Ring& ring, const OffsetSpec& spec);

/// Skeletons gathered while offsetting, for the optional debug dump.
struct SkeletonDebugLog {
  struct Entry {
    std::string label;
    StraightSkeleton skeleton;
  };
  std::vector<Entry> entries;
};

/// Shrinks the outer boundary and grows every hole by `safe_distance`, then
/// validates that the offset rings are pairwise disjoint and properly nested.
RegionOfInterest offset_region(const RegionOfInterest& roi, double safe_distance,
                               SkeletonDebugLog* debug = nullptr);

}  // namespace covplan
