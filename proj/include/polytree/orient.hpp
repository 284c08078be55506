#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "polytree/model.hpp"
#include "polytree/skeleton.hpp"

namespace polytree {

// Decides marginal (and, in degenerate mode, conditional) independence.
struct ExactThreshold {
  double epsilon = 1e-9;  // bits
};
struct FixedThreshold {
  double tau = 0.01;  // bits
};
struct GTest {
  double alpha = 0.01;
  // Defaults to the record count of the empirical source.
  std::optional<std::uint64_t> sample_count;
};

class IndependenceOracle {
 public:
  using Mode = std::variant<ExactThreshold, FixedThreshold, GTest>;

  // Throws ConfigError unless thresholds are > 0 and 0 < alpha < 1.
  IndependenceOracle(Mode mode);

  static IndependenceOracle exact(double epsilon = 1e-9) { return {ExactThreshold{epsilon}}; }
  static IndependenceOracle fixed(double tau) { return {FixedThreshold{tau}}; }
  static IndependenceOracle gtest(double alpha = 0.01) { return {GTest{alpha, std::nullopt}}; }
  // ExactThreshold(1e-9) for exact sources, GTest(0.01) for empirical ones.
  static IndependenceOracle default_for(const DistributionSource& src);

  const Mode& mode() const { return mode_; }
  std::string describe() const;

 private:
  Mode mode_;
};

enum class EdgeState { Directed, Undetermined };

struct EdgeOrientation {
  Edge edge;
  EdgeState state = EdgeState::Undetermined;
  std::size_t from = 0;  // meaningful when Directed
  std::size_t to = 0;
};

struct RecoveredStructure {
  Skeleton skeleton;
  // Parallel to skeleton.edges().
  std::vector<EdgeOrientation> edges;
  // Connected components of the Directed edges, each sorted; ordered by their
  // smallest edge.
  std::vector<std::vector<Edge>> basins;
  std::vector<std::string> warnings;

  std::vector<DirectedEdge> directed_edges() const;
  std::vector<Edge> undetermined_edges() const;
};

enum class TripletType { Type3, Type12 };
enum class NeighborRole { Parent, Child };

// True iff the oracle judges x_i and x_j marginally independent.
bool independent(const DistributionSource& src, std::size_t i, std::size_t j,
                 const IndependenceOracle& oracle);

// True iff the oracle judges x_i and x_j independent given x_k.
bool conditionally_independent(const DistributionSource& src, std::size_t i, std::size_t j,
                               std::size_t k, const IndependenceOracle& oracle);

// Classifies the adjacent triplet a - b - c. Normal mode: Type3 iff a and c
// are marginally independent. Degenerate mode: Type3 iff a and c are
// dependent given b.
TripletType classify_triplet(const DistributionSource& src, const Skeleton& sk, std::size_t a,
                             std::size_t b, std::size_t c, const IndependenceOracle& oracle,
                             bool degenerate_mode);

// Partially directed triplet known_parent -> b - d: d is a parent of b iff
// the triplet (known_parent, b, d) is a collider.
NeighborRole resolve_neighbor(const DistributionSource& src, const Skeleton& sk, std::size_t b,
                              std::size_t known_parent, std::size_t d,
                              const IndependenceOracle& oracle, bool degenerate_mode);

// Leaf-peeling layers: layer 0 holds the leaves, layer k the leaves left after
// deleting layers < k. Returned per node.
std::vector<std::size_t> peeling_layers(const Skeleton& sk);

// Orients the skeleton as far as the distribution allows. Internal nodes are
// scanned outermost layer first for a pair of independent unoriented
// neighbors; each discovery orients the node's remaining branches and sweeps
// onward through every node that gains an incoming arrow. Edges left over are
// Undetermined. Oracle contradictions leave the edge Undetermined and add a
// warning.
RecoveredStructure recover_directions(const DistributionSource& src, const Skeleton& sk,
                                      const IndependenceOracle& oracle, bool degenerate_mode);

}  // namespace polytree
