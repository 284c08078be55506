#include "polytree/generate.hpp"

#include <algorithm>
#include <cstdio>
#include <queue>
#include <random>
#include <set>

#include "polytree/error.hpp"
#include "polytree/info.hpp"

namespace polytree {

namespace {

std::string fmt_bits(double bits) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", bits);
  return buf;
}

// Pruefer decoding of a uniformly random labeled tree.
std::vector<Edge> random_tree(std::size_t n, std::mt19937_64& rng) {
  std::vector<Edge> edges;
  if (n < 2) return edges;
  if (n == 2) return {Edge(0, 1)};
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::vector<std::size_t> code(n - 2);
  for (auto& c : code) c = pick(rng);
  std::vector<std::size_t> degree(n, 1);
  for (std::size_t c : code) ++degree[c];
  std::set<std::size_t> leaves;
  for (std::size_t v = 0; v < n; ++v) {
    if (degree[v] == 1) leaves.insert(v);
  }
  for (std::size_t c : code) {
    const std::size_t leaf = *leaves.begin();
    leaves.erase(leaves.begin());
    edges.emplace_back(leaf, c);
    if (--degree[c] == 1) leaves.insert(c);
  }
  const std::size_t a = *leaves.begin();
  const std::size_t b = *std::next(leaves.begin());
  edges.emplace_back(a, b);
  return edges;
}

// Edge and collider criteria from local marginals. Parents of a node in a
// poly-tree are mutually independent, so every family marginal is the CPT
// weighted by the product of the parents' single-node marginals.
std::vector<std::string> local_violations(const Polytree& model, double floor_bits,
                                          bool stop_early) {
  const auto& vars = model.variables();
  std::vector<std::vector<double>> single(model.size());
  for (std::size_t v : model.topological_order()) {
    single[v].assign(static_cast<std::size_t>(model.cardinality(v)), 0.0);
  }

  // Joint over (parents..., child) in row-major order, child fastest.
  auto family_joint = [&](std::size_t v) {
    const auto& ps = model.parents(v);
    const auto& cpt = model.cpt(v);
    const auto card = static_cast<std::size_t>(model.cardinality(v));
    std::vector<double> out(cpt.size());
    std::vector<int> config(ps.size(), 0);
    for (std::size_t col = 0; col < cpt.size() / card; ++col) {
      double w = 1.0;
      for (std::size_t k = 0; k < ps.size(); ++k) w *= single[ps[k]][static_cast<std::size_t>(config[k])];
      for (std::size_t x = 0; x < card; ++x) out[col * card + x] = w * cpt[col * card + x];
      for (std::size_t k = ps.size(); k-- > 0;) {
        if (++config[k] < model.cardinality(ps[k])) break;
        config[k] = 0;
      }
    }
    return out;
  };

  std::vector<std::vector<double>> families(model.size());
  for (std::size_t v : model.topological_order()) {
    families[v] = family_joint(v);
    const auto card = static_cast<std::size_t>(model.cardinality(v));
    for (std::size_t k = 0; k < families[v].size(); ++k) single[v][k % card] += families[v][k];
  }

  // Sum the family joint of v down to the listed parent positions plus v.
  auto project = [&](std::size_t v, const std::vector<std::size_t>& keep) {
    const auto& ps = model.parents(v);
    const auto card = static_cast<std::size_t>(model.cardinality(v));
    std::size_t size = card;
    for (std::size_t k : keep) size *= static_cast<std::size_t>(model.cardinality(ps[k]));
    std::vector<double> out(size, 0.0);
    std::vector<int> config(ps.size(), 0);
    const auto& fam = families[v];
    for (std::size_t col = 0; col < fam.size() / card; ++col) {
      std::size_t cell = 0;
      for (std::size_t k : keep) cell = cell * static_cast<std::size_t>(model.cardinality(ps[k])) + static_cast<std::size_t>(config[k]);
      for (std::size_t x = 0; x < card; ++x) out[cell * card + x] += fam[col * card + x];
      for (std::size_t k = ps.size(); k-- > 0;) {
        if (++config[k] < model.cardinality(ps[k])) break;
        config[k] = 0;
      }
    }
    return out;
  };

  std::vector<std::string> violations;
  for (std::size_t v = 0; v < model.size(); ++v) {
    const auto& ps = model.parents(v);
    for (std::size_t k = 0; k < ps.size(); ++k) {
      const double bits = mutual_information(PairTable(model.cardinality(ps[k]), model.cardinality(v), project(v, {k})));
      if (bits < floor_bits) {
        violations.push_back("edge " + vars[ps[k]].name + " -> " + vars[v].name + ": I = " +
                             fmt_bits(bits) + " bits below floor " + fmt_bits(floor_bits));
        if (stop_early) return violations;
      }
    }
    for (std::size_t x = 0; x < ps.size(); ++x) {
      for (std::size_t y = x + 1; y < ps.size(); ++y) {
        const double bits = conditional_mutual_information(TripleTable(
            model.cardinality(ps[x]), model.cardinality(ps[y]), model.cardinality(v), project(v, {x, y})));
        if (bits < floor_bits) {
          violations.push_back("collider " + vars[ps[x]].name + " - " + vars[v].name + " - " +
                               vars[ps[y]].name + ": I(A;C|B) = " + fmt_bits(bits) +
                               " bits below floor " + fmt_bits(floor_bits));
          if (stop_early) return violations;
        }
      }
    }
  }
  return violations;
}

}  // namespace

NondegeneracyReport check_nondegeneracy(const Polytree& model, double floor_bits) {
  NondegeneracyReport report;
  report.violations = local_violations(model, floor_bits, false);
  report.passed = report.violations.empty();
  if (model.size() >= 2) {
    report.weight_ties =
        mwst(compute_weights(DistributionSource::factored(model)), kExactTieTolerance).tie_report();
  }
  return report;
}

Polytree random_parameters(std::vector<VariableSpec> variables,
                           std::vector<std::vector<std::size_t>> parents, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::gamma_distribution<double> draw(0.7, 1.0);
  std::vector<std::vector<double>> cpts(variables.size());
  for (std::size_t i = 0; i < variables.size(); ++i) {
    std::size_t columns = 1;
    for (std::size_t p : parents.at(i)) columns *= static_cast<std::size_t>(variables.at(p).cardinality);
    const auto card = static_cast<std::size_t>(variables[i].cardinality);
    auto& cpt = cpts[i];
    cpt.resize(columns * card);
    for (std::size_t col = 0; col < columns; ++col) {
      double sum = 0.0;
      for (std::size_t x = 0; x < card; ++x) {
        // Strictly positive cells.
        const double g = std::max(draw(rng), 1e-6);
        cpt[col * card + x] = g;
        sum += g;
      }
      for (std::size_t x = 0; x < card; ++x) cpt[col * card + x] /= sum;
    }
  }
  return Polytree(std::move(variables), std::move(parents), std::move(cpts));
}

Polytree random_polytree(const RandomPolytreeOptions& options) {
  const std::size_t n = options.n_vars;
  if (n < 1) throw InputError("random_polytree needs at least one variable");
  if (options.max_card < 2) throw InputError("max_card must be at least 2");
  if (n > 1 && options.max_parents < 1) throw InputError("max_parents must be at least 1");

  std::mt19937_64 rng(options.seed);
  std::uniform_int_distribution<int> card_dist(2, options.max_card);
  std::bernoulli_distribution coin(0.5);

  for (int attempt = 0; attempt < options.max_attempts; ++attempt) {
    std::vector<VariableSpec> vars(n);
    for (std::size_t i = 0; i < n; ++i) {
      vars[i].name = "X" + std::to_string(i);
      vars[i].cardinality = card_dist(rng);
    }

    // Breadth-first from a random root; each tree edge is reversed with
    // probability 1/2 when its upper endpoint still has room for a parent.
    const auto tree = random_tree(n, rng);
    std::vector<std::vector<std::size_t>> adjacency(n);
    for (const auto& e : tree) {
      adjacency[e.u].push_back(e.v);
      adjacency[e.v].push_back(e.u);
    }
    std::vector<std::vector<std::size_t>> parents(n);
    std::vector<bool> seen(n, false);
    std::queue<std::size_t> frontier;
    const std::size_t root = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
    frontier.push(root);
    seen[root] = true;
    while (!frontier.empty()) {
      const std::size_t v = frontier.front();
      frontier.pop();
      for (std::size_t w : adjacency[v]) {
        if (seen[w]) continue;
        seen[w] = true;
        frontier.push(w);
        const bool room = parents[v].size() < static_cast<std::size_t>(options.max_parents);
        if (room && coin(rng)) {
          parents[v].push_back(w);
        } else {
          parents[w].push_back(v);
        }
      }
    }
    for (auto& p : parents) std::sort(p.begin(), p.end());

    auto model = random_parameters(std::move(vars), std::move(parents), rng());
    if (local_violations(model, options.strength_floor, true).empty()) return model;
  }
  throw DegeneracyError("no non-degenerate poly-tree found in " +
                        std::to_string(options.max_attempts) + " attempts");
}

}  // namespace polytree
