#pragma once

#include <optional>
#include <vector>

#include "covplan/decompose.hpp"
#include "covplan/geometry.hpp"
#include "covplan/merge.hpp"
#include "covplan/projection.hpp"
#include "covplan/region.hpp"

namespace covplan {

enum class FirstLineMode { PaperRule, Centered };

/// Flight-line spacing derived from the imaging geometry: adjacent swaths
/// overlap by `sidelap`, so lines sit swath_width * (1 - sidelap) apart.
struct SpacingSpec {
  double swath_width = 0.0;
  double sidelap = 0.0;
  double spacing_d = 0.0;
  FirstLineMode first_line_mode = FirstLineMode::PaperRule;
};

SpacingSpec spacing_from_overlap(double swath_width, double sidelap,
                                 FirstLineMode mode = FirstLineMode::PaperRule);

/// One back-and-forth coverage path. Waypoints alternate direction on
/// consecutive long legs; `line_count` is the number of sweep lines used.
struct BoustrophedonPath {
  std::vector<Point2D> waypoints;
  int region_index = -1;
  int line_count = 0;
};

/// Connector flown between two consecutive paths; a straight hop normally,
/// a polyline when it must detour around a grown exclusion zone.
struct Transition {
  std::vector<Point2D> waypoints;
};

struct CoveragePlan {
  std::vector<BoustrophedonPath> paths;
  std::vector<Transition> transitions;  // exactly paths.size() - 1 entries
  SweepFrame sweep_frame;
  SpacingSpec spacing;
  double safe_distance = 0.0;
  // Geometry context for serialization (world frame).
  std::vector<RegionOfInterest> source_regions;
  std::vector<RegionOfInterest> offset_regions;
  std::optional<LocalProjection> projection;
};

/// Horizontal sweep lines clipped to a monotone region (frame coordinates).
/// PaperRule places lines at y_min + n*d starting at n = 1; Centered splits
/// the leftover margin evenly so no interior point is farther than d/2 from
/// a line. Throws EmptyPath when no line fits.
BoustrophedonPath generate_zigzag(const MergedRegion& region, const SpacingSpec& spacing);

/// World-frame image of the n-th frame-horizontal sweep line. For a
/// non-vertical family this is y = m*x + n*d*sqrt(m^2+1); the vertical case
/// is reported as x = n*d instead.
struct SweepLine {
  bool vertical = false;
  double slope = 0.0;
  double intercept = 0.0;  // or the x constant when vertical
};

SweepLine line_family_world(const SpacingSpec& spacing, const SweepFrame& frame, int n);

/// Orders paths greedily by nearest endpoint (reversing paths when helpful)
/// and inserts transitions. A transition crossing a grown hole is replaced by
/// the shortest polyline through a visibility graph over the grown-hole
/// vertices. Everything stays in the coordinate frame of `offset_roi`.
CoveragePlan link_paths(const std::vector<BoustrophedonPath>& paths,
                        const RegionOfInterest& offset_roi);

/// Variant used by the pipeline: obstacles from several regions at once and
/// an optional containment boundary per path pair.
CoveragePlan link_paths_multi(const std::vector<BoustrophedonPath>& paths,
                              const std::vector<RegionOfInterest>& offset_rois);

/// Rotates every waypoint and transition out of the sweep frame.
CoveragePlan to_world(CoveragePlan plan, const SweepFrame& frame);

}  // namespace covplan
