#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "covplan/zigzag.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

using namespace covplan;
using namespace covplan::testing;

namespace {

MergedRegion region_of(const Ring& ring) { return MergedRegion{ring, {0}}; }

/// Independent blocked-edge test for the visibility oracle: dense sampling of
/// strict interiority via the winding rule.
bool oracle_blocked(const Point2D& a, const Point2D& b, const Ring& hole) {
  for (int s = 1; s < 400; ++s) {
    double t = s / 400.0;
    Point2D p{a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)};
    if (winding_inside(hole, p) && distance_to_ring(hole, p) > 1e-9) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("spacing from overlap") {
  CHECK(spacing_from_overlap(100.0, 0.8).spacing_d == doctest::Approx(20.0));
  CHECK(spacing_from_overlap(50.0, 0.0).spacing_d == doctest::Approx(50.0));
  CHECK_THROWS_AS(spacing_from_overlap(100.0, 1.0), PlanningError);
  CHECK_THROWS_AS(spacing_from_overlap(100.0, -0.1), PlanningError);
  CHECK_THROWS_AS(spacing_from_overlap(0.0, 0.5), PlanningError);
}

TEST_CASE("paper-rule rectangle path matches the worked example exactly") {
  MergedRegion region = region_of(rect_ring(0, 0, 4, 1));
  BoustrophedonPath path = generate_zigzag(region, spacing_from_overlap(0.25, 0.0));
  REQUIRE(path.waypoints.size() == 6);
  CHECK(path.line_count == 3);
  std::vector<Point2D> expect = {{0, 0.25}, {4, 0.25}, {4, 0.5}, {0, 0.5}, {0, 0.75}, {4, 0.75}};
  for (std::size_t i = 0; i < expect.size(); ++i) {
    CHECK(std::abs(path.waypoints[i].x - expect[i].x) < 1e-9);
    CHECK(std::abs(path.waypoints[i].y - expect[i].y) < 1e-9);
  }
}

TEST_CASE("paper rule: region thinner than the spacing raises EmptyPath") {
  MergedRegion region = region_of(rect_ring(0, 0, 4, 1));
  CHECK_THROWS_AS(generate_zigzag(region, spacing_from_overlap(1.5, 0.0)), PlanningError);
  CHECK_THROWS_AS(generate_zigzag(region, spacing_from_overlap(1.0, 0.0)), PlanningError);
}

TEST_CASE("centered mode splits the margin evenly") {
  MergedRegion region = region_of(rect_ring(0, 0, 2, 1));
  BoustrophedonPath path =
      generate_zigzag(region, spacing_from_overlap(0.5, 0.0, FirstLineMode::Centered));
  REQUIRE(path.line_count == 2);
  CHECK(path.waypoints[0].y == doctest::Approx(0.25));
  CHECK(path.waypoints[2].y == doctest::Approx(0.75));

  // A single line still fits in a region thinner than d.
  BoustrophedonPath one =
      generate_zigzag(region, spacing_from_overlap(2.0, 0.0, FirstLineMode::Centered));
  CHECK(one.line_count == 1);
  CHECK(one.waypoints[0].y == doctest::Approx(0.5));
}

TEST_CASE("centered mode never leaves more than d/2 uncovered at the extremes") {
  std::mt19937 rng(97);
  std::uniform_real_distribution<double> extent_pick(0.3, 9.0);
  for (int iter = 0; iter < 200; ++iter) {
    double extent = extent_pick(rng);
    MergedRegion region = region_of(rect_ring(0, 0, 4, extent));
    SpacingSpec sp = spacing_from_overlap(1.0, 0.0, FirstLineMode::Centered);
    BoustrophedonPath path = generate_zigzag(region, sp);
    double first = path.waypoints.front().y;
    double last = path.waypoints.back().y;
    CHECK(first - 0.0 <= sp.spacing_d / 2.0 + 1e-9);
    CHECK(extent - last <= sp.spacing_d / 2.0 + 1e-9);
    for (int k = 1; k < path.line_count; ++k) {
      double gap = path.waypoints[2 * k].y - path.waypoints[2 * k - 2].y;
      CHECK(gap == doctest::Approx(sp.spacing_d).epsilon(1e-9));
    }
  }
}

TEST_CASE("alternation holds on random monotone regions") {
  std::mt19937 rng(101);
  for (int iter = 0; iter < 100; ++iter) {
    Ring ring = random_convex_ring(rng, 6 + iter % 5, {0, 0}, 10.0);
    SpacingSpec sp = spacing_from_overlap(2.0, 0.3);
    BoustrophedonPath path;
    try {
      path = generate_zigzag(region_of(ring), sp);
    } catch (const PlanningError&) {
      continue;  // too thin for the paper rule
    }
    for (int k = 1; k < path.line_count; ++k) {
      Vec2D prev = path.waypoints[2 * k - 1] - path.waypoints[2 * k - 2];
      Vec2D cur = path.waypoints[2 * k + 1] - path.waypoints[2 * k];
      CHECK(dot2(prev, cur) < 0.0);
    }
    double tol = 1e-6 * ring.bounds().diagonal();
    for (const Point2D& p : path.waypoints) {
      CHECK(distance_to_ring(ring, p) <= tol);
    }
  }
}

TEST_CASE("line family matches y = mx + n*d*sqrt(m^2+1)") {
  SpacingSpec sp = spacing_from_overlap(1.0, 0.0);
  SUBCASE("m = 0") {
    SweepFrame frame = frame_for_sweep_angle(0.0);
    SweepLine line = line_family_world(sp, frame, 3);
    CHECK_FALSE(line.vertical);
    CHECK(line.slope == doctest::Approx(0.0));
    CHECK(line.intercept == doctest::Approx(3.0).epsilon(1e-12));
  }
  SUBCASE("m = 1, d = sqrt(2)") {
    SpacingSpec wide = spacing_from_overlap(std::sqrt(2.0), 0.0);
    SweepFrame frame = frame_for_sweep_angle(45.0);
    SweepLine line = line_family_world(wide, frame, 1);
    CHECK(line.slope == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(line.intercept == doctest::Approx(2.0).epsilon(1e-9));
  }
  SUBCASE("n = 0 is the base line through the origin") {
    SweepFrame frame = frame_for_sweep_angle(30.0);
    SweepLine line = line_family_world(sp, frame, 0);
    CHECK(line.intercept == doctest::Approx(0.0));
  }
  SUBCASE("vertical family at sweep 90") {
    SweepFrame frame = frame_for_sweep_angle(90.0);
    SweepLine line = line_family_world(sp, frame, 2);
    CHECK(line.vertical);
    CHECK(line.intercept == doctest::Approx(2.0));
  }
}

TEST_CASE("single path links to a plan without transitions") {
  RegionOfInterest roi = make_region(square_ring(20.0), {});
  BoustrophedonPath p;
  p.waypoints = {{1, 1}, {19, 1}, {19, 3}, {1, 3}};
  p.line_count = 2;
  CoveragePlan plan = link_paths({p}, roi);
  CHECK(plan.paths.size() == 1);
  CHECK(plan.transitions.empty());
}

TEST_CASE("clear gap between paths gives one straight transition") {
  RegionOfInterest roi = make_region(square_ring(20.0), {});
  BoustrophedonPath a, b;
  a.waypoints = {{1, 1}, {8, 1}, {8, 2}, {1, 2}};
  b.waypoints = {{12, 2}, {19, 2}, {19, 1}, {12, 1}};
  CoveragePlan plan = link_paths({a, b}, roi);
  REQUIRE(plan.paths.size() == 2);
  REQUIRE(plan.transitions.size() == 1);
  CHECK(plan.transitions[0].waypoints.size() == 2);
  // Transition joins the first path's end to the second path's start.
  CHECK(distance(plan.transitions[0].waypoints.front(), plan.paths[0].waypoints.back()) == 0.0);
  CHECK(distance(plan.transitions[0].waypoints.back(), plan.paths[1].waypoints.front()) == 0.0);
}

TEST_CASE("transition detours around a grown hole via its corners") {
  Ring outer = square_ring(20.0);
  Ring hole = square_ring(4.0, {8.0, 8.0});  // [8,12]^2
  RegionOfInterest roi = make_region(outer, {hole});

  BoustrophedonPath a, b;
  a.waypoints = {{1, 10}, {6, 10}};
  a.line_count = 1;
  b.waypoints = {{14, 10}, {19, 10}};
  b.line_count = 1;
  CoveragePlan plan = link_paths({a, b}, roi);
  REQUIRE(plan.transitions.size() == 1);
  const auto& detour = plan.transitions[0].waypoints;
  CHECK(detour.size() > 2);

  double length = 0.0;
  for (std::size_t i = 1; i < detour.size(); ++i) length += distance(detour[i - 1], detour[i]);

  // Brute-force oracle over endpoints + hole corners.
  std::vector<Point2D> nodes = {{6, 10}, {14, 10}};
  for (const Point2D& p : roi.holes[0].vertices()) nodes.push_back(p);
  std::vector<std::vector<double>> cost(nodes.size(),
                                        std::vector<double>(nodes.size(),
                                                            std::numeric_limits<double>::infinity()));
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = 0; j < nodes.size(); ++j) {
      if (i != j && !oracle_blocked(nodes[i], nodes[j], roi.holes[0])) {
        cost[i][j] = distance(nodes[i], nodes[j]);
      }
    }
  }
  double oracle = brute_force_shortest_path(cost, 0, 1);
  CHECK(length == doctest::Approx(oracle).epsilon(1e-9));
  CHECK(length == doctest::Approx(4.0 + 4.0 * std::sqrt(2.0)).epsilon(1e-9));
}

TEST_CASE("sealed endpoints raise UnroutableTransition") {
  // A hole ringed so tightly around the goal that nothing reaches it without
  // crossing the grown hole.
  Ring outer = square_ring(20.0);
  Ring hole = square_ring(6.0, {7.0, 7.0});
  RegionOfInterest roi = make_region(outer, {hole});
  BoustrophedonPath a, b;
  a.waypoints = {{1, 10}, {4, 10}};
  b.waypoints = {{10, 10}, {10, 11}};  // strictly inside the hole
  CHECK_THROWS_AS(link_paths({a, b}, roi), PlanningError);
}

TEST_CASE("to_world rotates plans back") {
  SweepFrame frame = frame_for_sweep_angle(90.0);
  CoveragePlan plan;
  BoustrophedonPath p;
  p.waypoints = {{1, 0}};
  plan.paths.push_back(p);
  CoveragePlan world = to_world(plan, frame);
  // Frame rotation is -90 deg, so going back is +90: (1,0) -> (0,1).
  CHECK(world.paths[0].waypoints[0].x == doctest::Approx(0.0));
  CHECK(world.paths[0].waypoints[0].y == doctest::Approx(1.0));

  SweepFrame ident = frame_for_sweep_angle(0.0);
  CoveragePlan same = to_world(world, ident);
  CHECK(same.paths[0].waypoints[0].x == doctest::Approx(0.0));
  CHECK(same.paths[0].waypoints[0].y == doctest::Approx(1.0));
}

TEST_CASE("frame/world round trip is the identity") {
  std::mt19937 rng(103);
  std::uniform_real_distribution<double> coord(-50.0, 50.0);
  SweepFrame frame = frame_for_sweep_angle(77.0);
  for (int i = 0; i < 100; ++i) {
    Point2D p{coord(rng), coord(rng)};
    Point2D back = rotate(inverse(frame.rotation), rotate(frame.rotation, p));
    CHECK(distance(back, p) <= 1e-9 * 100.0);
  }
}
