#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "polytree/model.hpp"
#include "polytree/skeleton.hpp"

namespace polytree {

struct NondegeneracyReport {
  bool passed = true;
  std::vector<std::string> violations;
  // Informational: tie groups met while building the maximum weight spanning
  // tree of the exact pairwise weights. They do not affect `passed`.
  std::vector<std::vector<Edge>> weight_ties;
};

// Checks the information criteria on pairs and adjacent triplets:
//  - I(A;B) >= floor for every edge A-B,
//  - I(A;C | B) >= floor for every collider A -> B <- C.
NondegeneracyReport check_nondegeneracy(const Polytree& model, double floor_bits);

// Attaches random CPTs to a fixed structure. Entries are drawn from a gamma
// distribution and normalized per column. No degeneracy check.
Polytree random_parameters(std::vector<VariableSpec> variables,
                           std::vector<std::vector<std::size_t>> parents, std::uint64_t seed);

struct RandomPolytreeOptions {
  std::size_t n_vars = 5;
  int max_card = 2;       // cardinalities drawn uniformly from [2, max_card]
  int max_parents = 2;    // in-degree bound; must be >= 1 when n_vars > 1
  double strength_floor = 0.01;  // bits
  std::uint64_t seed = 0;
  int max_attempts = 2000;
};

// Uniform random labeled tree (Pruefer code), random orientation respecting
// max_parents, random CPTs; regenerated until check_nondegeneracy passes.
// Throws DegeneracyError once max_attempts is exhausted.
Polytree random_polytree(const RandomPolytreeOptions& options);

}  // namespace polytree
