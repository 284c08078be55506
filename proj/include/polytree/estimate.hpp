#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "polytree/model.hpp"
#include "polytree/orient.hpp"

namespace polytree {

// Directions supplied from outside the data for Undetermined edges.
struct OrientationOverride {
  std::vector<DirectedEdge> directions;
};

// A tree with every edge directed; parents are kept sorted.
struct DirectedStructure {
  std::size_t n = 0;
  std::vector<DirectedEdge> edges;  // sorted by (from, to)
  std::vector<std::string> warnings;

  std::vector<std::vector<std::size_t>> parent_lists() const;
};

// Applies the override, then directs every remaining Undetermined fragment
// away from a root: the lowest-index fragment node that already has an
// incoming arrow, else the lowest-index node. Throws InputError when an
// override names an edge that is not Undetermined, or when it creates a
// collider whose parents the oracle judges dependent.
DirectedStructure complete_orientation(const RecoveredStructure& rs,
                                       const OrientationOverride& ov,
                                       const DistributionSource& src,
                                       const IndependenceOracle& oracle);

struct FitResult {
  Polytree model;
  std::vector<std::string> warnings;
};

// Fits P(x_i | parents) from the family marginals of `src`. Empirical counts
// get additive smoothing `smoothing`; a parent configuration with no mass
// becomes a uniform column and a warning.
FitResult fit_parameters(const DistributionSource& src, const DirectedStructure& directed,
                         double smoothing = 0.0);

}  // namespace polytree
