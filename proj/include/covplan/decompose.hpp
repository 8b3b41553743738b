#pragma once

#include <vector>

#include "covplan/geometry.hpp"
#include "covplan/region.hpp"

namespace covplan {

/// Rotated coordinate system in which sweep lines are horizontal. The sweep
/// angle is the direction of the flight lines in the world frame, degrees in
/// [0, 180).
struct SweepFrame {
  double sweep_angle_deg = 0.0;
  RotationFrame rotation;  // world -> frame
};

/// Sweep lines run perpendicular to the wind.
SweepFrame sweep_angle_from_wind(double wind_direction_deg);

/// Frame for an explicitly chosen sweep angle (normalized to [0, 180)).
SweepFrame frame_for_sweep_angle(double sweep_angle_deg);

enum class EventKind { Split, Merge };

/// A vertex where the horizontal intersection count changes by +-2 while
/// sweeping downward. Coordinates are in the sweep frame.
struct EventPoint {
  double y = 0.0;
  EventKind kind = EventKind::Split;
  Point2D location;
};

/// Detects split/merge events by comparing the intersection count just above
/// and just below every vertex level. A tiny x-proportional shear removes
/// horizontal-edge degeneracies during counting; reported locations are
/// unperturbed. The outer ring's extreme top/bottom levels are not events.
std::vector<EventPoint> find_events(const RegionOfInterest& roi, const SweepFrame& frame);

/// Monotone sub-polygon in frame coordinates together with the horizontal cut
/// segments introduced along event lines.
struct Cell {
  Ring boundary;
  std::vector<Segment> partition_edges;
  const RegionOfInterest* source = nullptr;
};

/// Cuts the region (frame coordinates) along the horizontal line through
/// every event point and returns the resulting faces. Cut segments are
/// clipped to the region interior, so one event line may contribute several
/// disjoint partition edges.
std::vector<Cell> partition_cells(const RegionOfInterest& roi,
                                  const std::vector<EventPoint>& events,
                                  const SweepFrame& frame);

/// The ROI transformed into frame coordinates (helper shared with pathgen).
RegionOfInterest rotate_region(const RotationFrame& rotation, const RegionOfInterest& roi);

}  // namespace covplan
