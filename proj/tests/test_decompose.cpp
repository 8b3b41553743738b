#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "covplan/decompose.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace covplan;
using namespace covplan::testing;

namespace {

RegionOfInterest s10_with_hole() {
  return make_region(square_ring(10.0), {square_ring(2.0, {4.0, 4.0})});
}

double region_area(const RegionOfInterest& roi) {
  double a = std::abs(signed_area(roi.outer));
  for (const Ring& h : roi.holes) a -= std::abs(signed_area(h));
  return a;
}

/// Exact monotonicity oracle: 2 crossings at the midpoint of every gap
/// between consecutive distinct vertex levels.
bool monotone_by_counting(const Ring& ring) {
  std::vector<double> ys;
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

TEST_CASE("sweep angle is perpendicular to the wind") {
  CHECK(sweep_angle_from_wind(45.0).sweep_angle_deg == doctest::Approx(135.0));
  CHECK(sweep_angle_from_wind(0.0).sweep_angle_deg == doctest::Approx(90.0));
  CHECK(sweep_angle_from_wind(350.0).sweep_angle_deg == doctest::Approx(80.0));
  CHECK(sweep_angle_from_wind(-30.0).sweep_angle_deg == doctest::Approx(60.0));
}

TEST_CASE("sweep frame keeps generated lines horizontal") {
  SweepFrame frame = sweep_angle_from_wind(45.0);
  double rad = frame.sweep_angle_deg * std::numbers::pi / 180.0;
  Point2D a{1.0, 2.0};
  Point2D b{a.x + 10.0 * std::cos(rad), a.y + 10.0 * std::sin(rad)};
  CHECK(rotate(frame.rotation, a).y ==
        doctest::Approx(rotate(frame.rotation, b).y).epsilon(1e-12));
}

TEST_CASE("convex region has no events") {
  RegionOfInterest roi = make_region(Ring({{0, 0}, {4, -1}, {6, 2}, {4, 5}, {1, 4}}), {});
  CHECK(find_events(roi, frame_for_sweep_angle(0.0)).empty());
  CHECK(find_events(roi, frame_for_sweep_angle(30.0)).empty());
}

TEST_CASE("square with centered hole: split at hole top, merge at hole bottom") {
  RegionOfInterest roi = s10_with_hole();
  auto events = find_events(roi, frame_for_sweep_angle(0.0));
  REQUIRE(events.size() == 2);
  CHECK(events[0].kind == EventKind::Split);
  CHECK(events[0].y == doctest::Approx(6.0));
  CHECK(events[1].kind == EventKind::Merge);
  CHECK(events[1].y == doctest::Approx(4.0));

  // Brute-force counting oracle at dense sampled levels.
  std::mt19937 rng(67);
  std::uniform_real_distribution<double> pick(0.01, 9.99);
  for (int i = 0; i < 10000; ++i) {
    double y = pick(rng);
    if (std::abs(y - 4.0) < 1e-9 || std::abs(y - 6.0) < 1e-9) continue;
    int expect = (y > 4.0 && y < 6.0) ? 4 : 2;
    CHECK(horizontal_crossings(roi, y) == expect);
  }
}

TEST_CASE("U-polygon: single merge event at the reflex vertex") {
  RegionOfInterest roi = make_region(u_ring(), {});
  auto events = find_events(roi, frame_for_sweep_angle(0.0));
  REQUIRE(events.size() == 1);
  CHECK(events[0].kind == EventKind::Merge);
  CHECK(events[0].y == doctest::Approx(1.0));
  CHECK(distance(events[0].location, {1.5, 1.0}) < 1e-9);
  CHECK(horizontal_crossings(roi, 1.5) == 4);
  CHECK(horizontal_crossings(roi, 0.5) == 2);
}

TEST_CASE("partition: convex ring stays a single cell") {
  RegionOfInterest roi = make_region(Ring({{0, 0}, {4, -1}, {6, 2}, {4, 5}, {1, 4}}), {});
  auto cells = partition_cells(roi, {}, frame_for_sweep_angle(0.0));
  REQUIRE(cells.size() == 1);
  CHECK(std::abs(std::abs(signed_area(cells[0].boundary)) - region_area(roi)) < 1e-9);
  CHECK(cells[0].partition_edges.empty());
}

TEST_CASE("partition: U-polygon cuts into two prongs and a base") {
  RegionOfInterest roi = make_region(u_ring(), {});
  SweepFrame frame = frame_for_sweep_angle(0.0);
  auto cells = partition_cells(roi, find_events(roi, frame), frame);
  REQUIRE(cells.size() == 3);
  double total = 0.0;
  for (const Cell& c : cells) {
    total += std::abs(signed_area(c.boundary));
    CHECK(monotone_by_counting(c.boundary));
  }
  CHECK(total == doctest::Approx(region_area(roi)).epsilon(1e-9));
  // Cells are ordered top-down, then left to right.
  CHECK(cells[0].boundary.bounds().min_y == doctest::Approx(1.0));
  CHECK(cells[1].boundary.bounds().min_y == doctest::Approx(1.0));
  CHECK(cells[2].boundary.bounds().max_y == doctest::Approx(1.0));
  CHECK(cells[0].boundary.bounds().min_x == doctest::Approx(0.0));
  CHECK(cells[1].boundary.bounds().min_x == doctest::Approx(1.5));
}

TEST_CASE("partition: square with hole cuts into four bands") {
  RegionOfInterest roi = s10_with_hole();
  SweepFrame frame = frame_for_sweep_angle(0.0);
  auto cells = partition_cells(roi, find_events(roi, frame), frame);
  REQUIRE(cells.size() == 4);
  double total = 0.0;
  for (const Cell& c : cells) {
    total += std::abs(signed_area(c.boundary));
    CHECK(monotone_by_counting(c.boundary));
    CHECK_FALSE(c.partition_edges.empty());
  }
  CHECK(total == doctest::Approx(96.0).epsilon(1e-9));
  // Order: top band, left band, right band, bottom band.
  CHECK(cells[0].boundary.bounds().min_y == doctest::Approx(6.0));
  CHECK(cells[1].boundary.bounds().max_x == doctest::Approx(4.0));
  CHECK(cells[2].boundary.bounds().min_x == doctest::Approx(6.0));
  CHECK(cells[3].boundary.bounds().max_y == doctest::Approx(4.0));
}

TEST_CASE("area conservation and monotonicity on random regions") {
  std::mt19937 rng(71);
  std::uniform_real_distribution<double> wind(0.0, 360.0);
  for (int iter = 0; iter < 25; ++iter) {
    RegionOfInterest roi = random_roi(rng);
    SweepFrame frame = sweep_angle_from_wind(wind(rng));
    auto cells = partition_cells(roi, find_events(roi, frame), frame);
    double total = 0.0;
    for (const Cell& c : cells) {
      total += std::abs(signed_area(c.boundary));
      CHECK(monotone_by_counting(c.boundary));
    }
    CHECK(total == doctest::Approx(region_area(roi)).epsilon(1e-6));
  }
}

TEST_CASE("counts are constant between consecutive event levels") {
  std::mt19937 rng(73);
  for (int iter = 0; iter < 15; ++iter) {
    RegionOfInterest roi = random_roi(rng);
    SweepFrame frame = sweep_angle_from_wind(0.0);
    RegionOfInterest fr = rotate_region(frame.rotation, roi);
    auto events = find_events(roi, frame);

    std::vector<double> breaks = {fr.outer.bounds().max_y};
    for (const EventPoint& ev : events) breaks.push_back(ev.y);
    breaks.push_back(fr.outer.bounds().min_y);
    std::sort(breaks.begin(), breaks.end(), std::greater<>());
    for (std::size_t g = 0; g + 1 < breaks.size(); ++g) {
      if (breaks[g] - breaks[g + 1] < 1e-9) continue;
      int reference = -1;
      for (int s = 1; s <= 100; ++s) {
        double y = breaks[g + 1] + (breaks[g] - breaks[g + 1]) * s / 101.0;
        int count = horizontal_crossings(fr, y);
        if (reference < 0) reference = count;
        CHECK(count == reference);
      }
    }
  }
}

TEST_CASE("event detection is frame equivariant") {
  std::mt19937 rng(79);
  for (int iter = 0; iter < 10; ++iter) {
    RegionOfInterest roi = random_roi(rng);
    SweepFrame frame = sweep_angle_from_wind(45.0);
    auto events = find_events(roi, frame);

    RegionOfInterest pre = rotate_region(frame.rotation, roi);
    auto aligned = find_events(pre, frame_for_sweep_angle(0.0));

    REQUIRE(aligned.size() == events.size());
    double tol = 1e-6 * roi.outer.bounds().diagonal();
    for (std::size_t i = 0; i < events.size(); ++i) {
      CHECK(events[i].kind == aligned[i].kind);
      // Both location sets live in the same rotated coordinates.
      CHECK(distance(events[i].location, aligned[i].location) <= tol);
    }
  }
}

TEST_CASE("events are reported in decreasing-y order with x tie-break") {
  std::mt19937 rng(83);
  for (int iter = 0; iter < 10; ++iter) {
    RegionOfInterest roi = random_roi(rng);
    auto events = find_events(roi, sweep_angle_from_wind(static_cast<double>(rng() % 360)));
    for (std::size_t i = 1; i < events.size(); ++i) {
      bool ordered = events[i - 1].y > events[i].y ||
                     (events[i - 1].y == events[i].y &&
                      events[i - 1].location.x <= events[i].location.x);
      CHECK(ordered);
    }
  }
}
