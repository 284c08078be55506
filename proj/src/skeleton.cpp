#include "polytree/skeleton.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "polytree/error.hpp"
#include "polytree/info.hpp"

namespace polytree {

namespace {

// Union-find with path halving and union by size.
class DisjointSet {
 public:
  explicit DisjointSet(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
};

}  // namespace

WeightedEdgeSet::WeightedEdgeSet(std::size_t n, std::vector<WeightedEdge> entries)
    : n_(n), entries_(std::move(entries)) {
  if (entries_.size() != n * (n - 1) / 2 && n > 0) {
    throw InputError("weighted edge set over " + std::to_string(n) + " variables needs " +
                     std::to_string(n * (n - 1) / 2) + " entries");
  }
  std::sort(entries_.begin(), entries_.end(),
            [](const WeightedEdge& a, const WeightedEdge& b) { return a.edge < b.edge; });
  for (std::size_t k = 0; k < entries_.size(); ++k) {
    const auto& e = entries_[k];
    if (e.edge.u == e.edge.v || e.edge.v >= n) throw InputError("invalid edge in weight set");
    if (k > 0 && entries_[k - 1].edge == e.edge) throw InputError("duplicate edge in weight set");
    if (!(e.weight >= 0.0)) throw InputError("negative or NaN branch weight");
  }
}

double WeightedEdgeSet::weight(std::size_t i, std::size_t j) const {
  const Edge key(i, j);
  auto it = std::lower_bound(entries_.begin(), entries_.end(), key,
                             [](const WeightedEdge& w, const Edge& e) { return w.edge < e; });
  if (it == entries_.end() || it->edge != key) throw InputError("no weight for requested pair");
  return it->weight;
}

Skeleton::Skeleton(std::size_t n, std::vector<Edge> edges, std::vector<std::vector<Edge>> tie_report)
    : n_(n), edges_(std::move(edges)), adjacency_(n), tie_report_(std::move(tie_report)) {
  if (n == 0) throw InputError("skeleton needs at least one node");
  if (edges_.size() != n - 1) {
    throw InputError("skeleton over " + std::to_string(n) + " nodes needs " +
                     std::to_string(n - 1) + " edges");
  }
  std::sort(edges_.begin(), edges_.end());
  DisjointSet components(n);
  for (const auto& e : edges_) {
    if (e.u == e.v || e.v >= n) throw InputError("invalid skeleton edge");
    if (!components.unite(e.u, e.v)) throw InputError("skeleton edges contain a cycle");
    adjacency_[e.u].push_back(e.v);
    adjacency_[e.v].push_back(e.u);
  }
  for (auto& nb : adjacency_) std::sort(nb.begin(), nb.end());
}

bool Skeleton::has_edge(std::size_t a, std::size_t b) const {
  return std::binary_search(edges_.begin(), edges_.end(), Edge(a, b));
}

WeightedEdgeSet compute_weights(const DistributionSource& src) {
  const std::size_t n = src.size();
  if (n < 2) throw InputError("at least two variables are needed to compute branch weights");
  std::vector<WeightedEdge> entries;
  entries.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      entries.push_back({Edge(i, j), mutual_information(pair_marginal(src, i, j))});
    }
  }
  return WeightedEdgeSet(n, std::move(entries));
}

Skeleton mwst(const WeightedEdgeSet& w, double tie_tolerance) {
  const std::size_t n = w.size();
  if (n < 2) throw InputError("maximum weight spanning tree needs at least two nodes");
  if (!(tie_tolerance >= 0.0)) throw InputError("tie tolerance must be non-negative");

  std::vector<WeightedEdge> order = w.entries();
  std::stable_sort(order.begin(), order.end(),
                   [](const WeightedEdge& a, const WeightedEdge& b) { return a.weight > b.weight; });

  DisjointSet forest(n);
  std::vector<Edge> chosen;
  std::vector<std::vector<Edge>> ties;

  std::size_t start = 0;
  while (start < order.size() && chosen.size() < n - 1) {
    std::size_t end = start + 1;
    while (end < order.size() && order[end - 1].weight - order[end].weight <= tie_tolerance) ++end;

    std::vector<Edge> group;
    for (std::size_t k = start; k < end; ++k) group.push_back(order[k].edge);
    std::sort(group.begin(), group.end());

    // Members whose endpoints are disconnected before the group starts could
    // each be accepted under some ordering of the group.
    std::vector<Edge> live;
    for (const auto& e : group) {
      if (forest.find(e.u) != forest.find(e.v)) live.push_back(e);
    }
    bool ambiguous = false;
    for (const auto& e : live) {
      if (chosen.size() < n - 1 && forest.unite(e.u, e.v)) {
        chosen.push_back(e);
      } else {
        ambiguous = true;
      }
    }
    if (ambiguous) ties.push_back(live);
    start = end;
  }
  return Skeleton(n, std::move(chosen), std::move(ties));
}

}  // namespace polytree
