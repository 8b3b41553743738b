#include <algorithm>

#include "covplan/decompose.hpp"
#include "covplan/io.hpp"
#include "covplan/merge.hpp"

namespace covplan {

namespace {

constexpr const char* kModule = "cli_io";

}  // namespace

CoveragePlan run_pipeline(const ParsedInput& input, const PlannerConfig& config,
                          SkeletonDebugLog* debug) {
  config.validate();
  std::vector<RegionOfInterest> regions = resolve_regions(input);

  SweepFrame frame = config.sweep_angle_override_deg
                         ? frame_for_sweep_angle(*config.sweep_angle_override_deg)
                         : sweep_angle_from_wind(config.wind_direction_deg);
  SpacingSpec spacing =
      spacing_from_overlap(config.swath_width_m, config.sidelap, config.first_line_mode);

  std::vector<RegionOfInterest> offset_world;
  std::vector<RegionOfInterest> offset_frame;
  std::vector<BoustrophedonPath> frame_paths;
  int region_counter = 0;

  for (const RegionOfInterest& roi : regions) {
    RegionOfInterest safe_roi = offset_region(roi, config.safe_distance_m, debug);
    offset_world.push_back(safe_roi);
    RegionOfInterest frame_roi = rotate_region(frame.rotation, safe_roi);
    offset_frame.push_back(frame_roi);

    std::vector<EventPoint> events = find_events(safe_roi, frame);
    std::vector<Cell> cells = partition_cells(safe_roi, events, frame);
    AdjacencyGraph graph = build_adjacency(cells);
    std::vector<MergedRegion> merged = merge_components(graph, cells);

    for (const MergedRegion& region : merged) {
      ++region_counter;
      try {
        BoustrophedonPath path = generate_zigzag(region, spacing);
        path.region_index = region_counter - 1;
        frame_paths.push_back(std::move(path));
      } catch (const PlanningError& err) {
        // A merged region thinner than the line spacing yields no sweep line
        // under the paper rule; it contributes no path.
        if (err.code() != ErrorCode::EmptyPath) throw;
      }
    }
  }

  if (frame_paths.empty()) {
    throw PlanningError(ErrorCode::EmptyPath, kModule,
                        "no region admits a sweep line at this spacing");
  }

  CoveragePlan plan = link_paths_multi(frame_paths, offset_frame);
  plan = to_world(std::move(plan), frame);
  plan.sweep_frame = frame;
  plan.spacing = spacing;
  plan.safe_distance = config.safe_distance_m;
  plan.source_regions = std::move(regions);
  plan.offset_regions = std::move(offset_world);
  plan.projection = input.projection;
  return plan;
}

}  // namespace covplan
