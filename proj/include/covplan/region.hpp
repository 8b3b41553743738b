#pragma once

#include <vector>

#include "covplan/geometry.hpp"

namespace covplan {

/// A flat bag of closed chains as parsed from input, order arbitrary.
/// Construction rejects chains whose boundaries intersect or touch.
struct ChainSet {
  std::vector<Ring> chains;
};

ChainSet make_chain_set(std::vector<Ring> chains);

/// One survey region: a CCW outer boundary plus CW holes strictly inside it.
struct RegionOfInterest {
  Ring outer;
  std::vector<Ring> holes;
  int nesting_depth = 0;
};

/// Entry (i, j) is true iff every vertex of chain i lies strictly inside
/// chain j. Mixed inside/outside verdicts raise AmbiguousNesting.
std::vector<std::vector<bool>> containment_matrix(const ChainSet& cs);

/// Containment-parity classification: chains at even nesting depth become
/// outer boundaries, odd-depth chains become holes of their immediate
/// container. Orientations are normalized (outer CCW, holes CW) and the
/// result is ordered canonically so it is independent of input order.
std::vector<RegionOfInterest> classify_chains(const ChainSet& cs);

/// Explicit outer+holes input mode: skips classification but still validates
/// disjointness and strict containment, and normalizes orientations.
RegionOfInterest make_region(Ring outer, std::vector<Ring> holes);

}  // namespace covplan
