#include "polytree/orient.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <map>
#include <numbers>

#include <boost/math/distributions/chi_squared.hpp>

#include "polytree/error.hpp"
#include "polytree/info.hpp"

namespace polytree {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double chi_square_critical(double alpha, double dof) {
  boost::math::chi_squared dist(dof);
  return boost::math::quantile(boost::math::complement(dist, alpha));
}

// Judges dependence from an information value in bits. `dof` is the degrees
// of freedom of the matching G-test.
bool judged_independent(const DistributionSource& src, double bits, double dof,
                        const IndependenceOracle& oracle) {
  return std::visit(
      overloaded{
          [&](const ExactThreshold& m) { return bits < m.epsilon; },
          [&](const FixedThreshold& m) { return bits < m.tau; },
          [&](const GTest& m) {
            if (src.is_exact()) throw ConfigError("the G-test oracle needs an empirical source");
            const auto n = static_cast<double>(m.sample_count.value_or(src.sample_count()));
            const double g = 2.0 * n * std::numbers::ln2 * bits;
            return g <= chi_square_critical(m.alpha, dof);
          },
      },
      oracle.mode());
}

double card(const DistributionSource& src, std::size_t i) {
  return static_cast<double>(src.variables()[i].cardinality);
}

void require_adjacent_triplet(const Skeleton& sk, std::size_t a, std::size_t b, std::size_t c) {
  if (a == c || a == b || b == c) throw InputError("triplet needs three distinct nodes");
  if (!sk.has_edge(a, b) || !sk.has_edge(b, c)) {
    throw InputError("triplet nodes are not adjacent in the skeleton");
  }
}

class Sweep {
 public:
  Sweep(const DistributionSource& src, const Skeleton& sk, const IndependenceOracle& oracle,
        bool degenerate)
      : src_(src), sk_(sk), oracle_(oracle), degenerate_(degenerate), parents_(sk.size()) {
    for (std::size_t k = 0; k < sk.edges().size(); ++k) index_[sk.edges()[k]] = k;
    status_.assign(sk.edges().size(), Status::Open);
    from_.assign(sk.edges().size(), 0);
  }

  RecoveredStructure run() {
    const auto layers = peeling_layers(sk_);
    std::vector<std::size_t> order;
    for (std::size_t v = 0; v < sk_.size(); ++v) {
      if (sk_.neighbors(v).size() >= 2) order.push_back(v);
    }
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return layers[a] < layers[b]; });

    // Orienting only removes candidate pairs, so one pass reaches the fixed
    // point.
    for (std::size_t b : order) {
      if (!parents_[b].empty()) continue;  // already swept
      const auto open = open_neighbors(b);
      if (open.size() < 2) continue;
      if (auto pair = find_independent_pair(b, open)) {
        orient(pair->first, b);
        orient(pair->second, b);
        sweep_from(b);
      }
    }
    return finish();
  }

 private:
  enum class Status { Open, Directed, Conflict };

  std::size_t edge_index(std::size_t a, std::size_t b) const { return index_.at(Edge(a, b)); }

  std::vector<std::size_t> open_neighbors(std::size_t v) const {
    std::vector<std::size_t> out;
    for (std::size_t w : sk_.neighbors(v)) {
      if (status_[edge_index(v, w)] == Status::Open) out.push_back(w);
    }
    return out;
  }

  std::optional<std::pair<std::size_t, std::size_t>> find_independent_pair(
      std::size_t b, const std::vector<std::size_t>& open) const {
    for (std::size_t x = 0; x < open.size(); ++x) {
      for (std::size_t y = x + 1; y < open.size(); ++y) {
        if (classify_triplet(src_, sk_, open[x], b, open[y], oracle_, degenerate_) ==
            TripletType::Type3) {
          return std::pair{open[x], open[y]};
        }
      }
    }
    return std::nullopt;
  }

  void orient(std::size_t from, std::size_t to) {
    const std::size_t k = edge_index(from, to);
    status_[k] = Status::Directed;
    from_[k] = from;
    parents_[to].push_back(from);
  }

  // Resolves every open branch of each node that has gained a parent, and
  // follows new children until nothing changes.
  void sweep_from(std::size_t start) {
    std::deque<std::size_t> queue{start};
    while (!queue.empty()) {
      const std::size_t v = queue.front();
      queue.pop_front();
      for (std::size_t d : open_neighbors(v)) {
        const auto& known = parents_[v];
        const NeighborRole role =
            resolve_neighbor(src_, sk_, v, known.front(), d, oracle_, degenerate_);
        // Every discovered parent has to agree with the first one.
        bool consistent = true;
        for (std::size_t k = 1; k < known.size() && consistent; ++k) {
          consistent = resolve_neighbor(src_, sk_, v, known[k], d, oracle_, degenerate_) == role;
        }
        if (!consistent) {
          status_[edge_index(v, d)] = Status::Conflict;
          warnings_.push_back("oracle conflict at " + name(v) + ": parents disagree on whether " +
                              name(d) + " is a parent or a child; edge " + name(v) + " - " +
                              name(d) + " left undetermined");
          continue;
        }
        if (role == NeighborRole::Parent) {
          orient(d, v);
        } else {
          orient(v, d);
          queue.push_back(d);
        }
      }
    }
  }

  const std::string& name(std::size_t v) const { return src_.variables()[v].name; }

  RecoveredStructure finish() {
    RecoveredStructure rs{sk_, {}, {}, std::move(warnings_)};
    std::vector<Edge> undetermined;
    for (std::size_t k = 0; k < sk_.edges().size(); ++k) {
      EdgeOrientation eo;
      eo.edge = sk_.edges()[k];
      if (status_[k] == Status::Directed) {
        eo.state = EdgeState::Directed;
        eo.from = from_[k];
        eo.to = from_[k] == eo.edge.u ? eo.edge.v : eo.edge.u;
      } else {
        undetermined.push_back(eo.edge);
      }
      rs.edges.push_back(eo);
    }

    // Basins: components of the Directed edges, found by flooding over
    // shared endpoints.
    std::vector<bool> assigned(sk_.edges().size(), false);
    for (std::size_t k = 0; k < sk_.edges().size(); ++k) {
      if (status_[k] != Status::Directed || assigned[k]) continue;
      std::vector<Edge> basin;
      std::vector<std::size_t> stack{k};
      assigned[k] = true;
      while (!stack.empty()) {
        const std::size_t cur = stack.back();
        stack.pop_back();
        const Edge e = sk_.edges()[cur];
        basin.push_back(e);
        for (std::size_t end : {e.u, e.v}) {
          for (std::size_t w : sk_.neighbors(end)) {
            const std::size_t next = edge_index(end, w);
            if (status_[next] == Status::Directed && !assigned[next]) {
              assigned[next] = true;
              stack.push_back(next);
            }
          }
        }
      }
      std::sort(basin.begin(), basin.end());
      rs.basins.push_back(std::move(basin));
    }

    if (!undetermined.empty()) {
      std::string list;
      for (const auto& e : undetermined) {
        if (!list.empty()) list += ", ";
        list += name(e.u) + " - " + name(e.v);
      }
      rs.warnings.push_back("undetermined edges need external semantics: " + list);
    }
    return rs;
  }

  const DistributionSource& src_;
  const Skeleton& sk_;
  const IndependenceOracle& oracle_;
  bool degenerate_;
  std::map<Edge, std::size_t> index_;
  std::vector<Status> status_;
  std::vector<std::size_t> from_;
  std::vector<std::vector<std::size_t>> parents_;
  std::vector<std::string> warnings_;
};

}  // namespace

IndependenceOracle::IndependenceOracle(Mode mode) : mode_(mode) {
  std::visit(overloaded{
                 [](const ExactThreshold& m) {
                   if (!(m.epsilon > 0.0)) throw ConfigError("epsilon must be positive");
                 },
                 [](const FixedThreshold& m) {
                   if (!(m.tau > 0.0)) throw ConfigError("tau must be positive");
                 },
                 [](const GTest& m) {
                   if (!(m.alpha > 0.0 && m.alpha < 1.0)) {
                     throw ConfigError("alpha must lie in (0, 1)");
                   }
                   if (m.sample_count && *m.sample_count == 0) {
                     throw ConfigError("G-test sample count must be positive");
                   }
                 },
             },
             mode_);
}

IndependenceOracle IndependenceOracle::default_for(const DistributionSource& src) {
  return src.is_exact() ? exact() : gtest();
}

std::string IndependenceOracle::describe() const {
  char buf[64];
  std::visit(overloaded{
                 [&](const ExactThreshold& m) {
                   std::snprintf(buf, sizeof buf, "exact(epsilon=%g)", m.epsilon);
                 },
                 [&](const FixedThreshold& m) {
                   std::snprintf(buf, sizeof buf, "fixed(tau=%g)", m.tau);
                 },
                 [&](const GTest& m) { std::snprintf(buf, sizeof buf, "gtest(alpha=%g)", m.alpha); },
             },
             mode_);
  return buf;
}

std::vector<DirectedEdge> RecoveredStructure::directed_edges() const {
  std::vector<DirectedEdge> out;
  for (const auto& e : edges) {
    if (e.state == EdgeState::Directed) out.push_back({e.from, e.to});
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Edge> RecoveredStructure::undetermined_edges() const {
  std::vector<Edge> out;
  for (const auto& e : edges) {
    if (e.state == EdgeState::Undetermined) out.push_back(e.edge);
  }
  return out;
}

bool independent(const DistributionSource& src, std::size_t i, std::size_t j,
                 const IndependenceOracle& oracle) {
  if (i == j) throw InputError("independence test needs two distinct variables");
  const double bits = mutual_information(pair_marginal(src, i, j));
  return judged_independent(src, bits, (card(src, i) - 1) * (card(src, j) - 1), oracle);
}

bool conditionally_independent(const DistributionSource& src, std::size_t i, std::size_t j,
                               std::size_t k, const IndependenceOracle& oracle) {
  const double bits = conditional_mutual_information(triple_marginal(src, i, j, k));
  return judged_independent(src, bits, (card(src, i) - 1) * (card(src, j) - 1) * card(src, k),
                            oracle);
}

TripletType classify_triplet(const DistributionSource& src, const Skeleton& sk, std::size_t a,
                             std::size_t b, std::size_t c, const IndependenceOracle& oracle,
                             bool degenerate_mode) {
  require_adjacent_triplet(sk, a, b, c);
  if (degenerate_mode) {
    return conditionally_independent(src, a, c, b, oracle) ? TripletType::Type12
                                                           : TripletType::Type3;
  }
  return independent(src, a, c, oracle) ? TripletType::Type3 : TripletType::Type12;
}

NeighborRole resolve_neighbor(const DistributionSource& src, const Skeleton& sk, std::size_t b,
                              std::size_t known_parent, std::size_t d,
                              const IndependenceOracle& oracle, bool degenerate_mode) {
  return classify_triplet(src, sk, known_parent, b, d, oracle, degenerate_mode) ==
                 TripletType::Type3
             ? NeighborRole::Parent
             : NeighborRole::Child;
}

std::vector<std::size_t> peeling_layers(const Skeleton& sk) {
  const std::size_t n = sk.size();
  std::vector<std::size_t> layer(n, 0);
  std::vector<std::size_t> degree(n);
  std::vector<bool> removed(n, false);
  for (std::size_t v = 0; v < n; ++v) degree[v] = sk.neighbors(v).size();
  std::size_t remaining = n;
  for (std::size_t current = 0; remaining > 0; ++current) {
    std::vector<std::size_t> peel;
    for (std::size_t v = 0; v < n; ++v) {
      if (!removed[v] && degree[v] <= 1) peel.push_back(v);
    }
    for (std::size_t v : peel) {
      removed[v] = true;
      layer[v] = current;
      --remaining;
      for (std::size_t w : sk.neighbors(v)) {
        if (!removed[w]) --degree[w];
      }
    }
  }
  return layer;
}

RecoveredStructure recover_directions(const DistributionSource& src, const Skeleton& sk,
                                      const IndependenceOracle& oracle, bool degenerate_mode) {
  if (sk.size() != src.size()) {
    throw InputError("skeleton and distribution have different variable counts");
  }
  return Sweep(src, sk, oracle, degenerate_mode).run();
}

}  // namespace polytree
