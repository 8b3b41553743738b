#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "covplan/projection.hpp"
#include "covplan/region.hpp"
#include "covplan/skeleton.hpp"
#include "covplan/zigzag.hpp"

namespace covplan {

struct PlannerConfig {
  double wind_direction_deg = 0.0;
  std::optional<double> sweep_angle_override_deg;
  double safe_distance_m = 0.0;
  double swath_width_m = 0.0;
  double sidelap = 0.0;
  FirstLineMode first_line_mode = FirstLineMode::PaperRule;
  std::optional<std::pair<double, double>> origin_lonlat;  // lon, lat degrees

  void validate() const;
};

/// Parse result: regions may arrive fully assembled (GeoJSON Polygon /
/// MultiPolygon, the explicit outer+holes mode) or as a flat chain set that
/// still needs nesting classification (FeatureCollection rings, CSV blocks).
struct ParsedInput {
  std::vector<RegionOfInterest> regions;
  std::optional<ChainSet> chains;
  std::optional<LocalProjection> projection;  // set when input was lon/lat
};

ParsedInput parse_region(const std::string& path, const PlannerConfig& config);

/// Classifies pending chains (if any) and returns the final region list.
std::vector<RegionOfInterest> resolve_regions(const ParsedInput& input);

/// Full planning chain: offset, decompose, merge, zig-zag, link, un-rotate.
CoveragePlan run_pipeline(const ParsedInput& input, const PlannerConfig& config,
                          SkeletonDebugLog* debug = nullptr);

/// Writes <prefix>.geojson, <prefix>.csv and <prefix>.svg. Output is
/// byte-deterministic for identical plans.
void emit_outputs(const CoveragePlan& plan, const std::string& out_prefix);

/// Skeleton debug dump (COVPLAN_DEBUG_SKELETON=1): arcs and events per ring.
void emit_skeleton_debug(const SkeletonDebugLog& log, const std::string& path);

}  // namespace covplan
