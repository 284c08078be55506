#pragma once

#include <cstddef>
#include <vector>

#include "polytree/model.hpp"

namespace polytree {

// Undirected edge with u < v.
struct Edge {
  std::size_t u = 0;
  std::size_t v = 0;

  Edge() = default;
  Edge(std::size_t a, std::size_t b) : u(a < b ? a : b), v(a < b ? b : a) {}

  auto operator<=>(const Edge&) const = default;
};

struct WeightedEdge {
  Edge edge;
  double weight = 0.0;  // bits
};

// Candidate branch weights for every pair i < j, in lexicographic order.
class WeightedEdgeSet {
 public:
  WeightedEdgeSet(std::size_t n, std::vector<WeightedEdge> entries);

  std::size_t size() const { return n_; }
  const std::vector<WeightedEdge>& entries() const { return entries_; }
  double weight(std::size_t i, std::size_t j) const;

 private:
  std::size_t n_;
  std::vector<WeightedEdge> entries_;
};

class Skeleton {
 public:
  // Throws InputError unless `edges` form a spanning tree over n nodes.
  Skeleton(std::size_t n, std::vector<Edge> edges, std::vector<std::vector<Edge>> tie_report = {});

  std::size_t size() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<std::size_t>& neighbors(std::size_t v) const { return adjacency_.at(v); }
  bool has_edge(std::size_t a, std::size_t b) const;
  // Groups of edges whose equal weights (within tolerance) made the selection
  // order-dependent. Empty when the maximum weight spanning tree is unique.
  const std::vector<std::vector<Edge>>& tie_report() const { return tie_report_; }

 private:
  std::size_t n_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> adjacency_;
  std::vector<std::vector<Edge>> tie_report_;
};

constexpr double kExactTieTolerance = 1e-9;
constexpr double kEmpiricalTieTolerance = 1e-4;

// weight(i, j) = I(x_i; x_j) for every pair. Requires at least 2 variables.
WeightedEdgeSet compute_weights(const DistributionSource& src);

// Greedy maximum weight spanning tree. Edges are taken by descending weight;
// edges within `tie_tolerance` of their predecessor form one tie group, whose
// members are visited in lexicographic order. A tie group is reported when one
// of its members is rejected although its endpoints were still disconnected
// when the group was reached.
Skeleton mwst(const WeightedEdgeSet& w, double tie_tolerance = kExactTieTolerance);

}  // namespace polytree
