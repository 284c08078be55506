#include "polytree/estimate.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "polytree/error.hpp"
#include "polytree/info.hpp"

namespace polytree {

std::vector<std::vector<std::size_t>> DirectedStructure::parent_lists() const {
  std::vector<std::vector<std::size_t>> parents(n);
  for (const auto& e : edges) parents.at(e.to).push_back(e.from);
  for (auto& p : parents) std::sort(p.begin(), p.end());
  return parents;
}

DirectedStructure complete_orientation(const RecoveredStructure& rs,
                                       const OrientationOverride& ov,
                                       const DistributionSource& src,
                                       const IndependenceOracle& oracle) {
  const Skeleton& sk = rs.skeleton;
  const std::size_t n = sk.size();
  const auto& vars = src.variables();
  if (vars.size() != n) throw InputError("structure and distribution have different sizes");
  auto name = [&](std::size_t v) { return vars[v].name; };

  std::map<Edge, DirectedEdge> directed;
  std::set<Edge> open;
  for (const auto& eo : rs.edges) {
    if (eo.state == EdgeState::Directed) {
      directed[eo.edge] = {eo.from, eo.to};
    } else {
      open.insert(eo.edge);
    }
  }

  std::set<Edge> overridden;
  for (const auto& d : ov.directions) {
    const Edge e(d.from, d.to);
    if (d.from >= n || d.to >= n || d.from == d.to || !sk.has_edge(d.from, d.to)) {
      throw InputError("override refers to a pair that is not a skeleton edge");
    }
    if (!open.contains(e)) {
      if (overridden.contains(e)) {
        throw InputError("edge " + name(e.u) + " - " + name(e.v) + " is overridden twice");
      }
      throw InputError("edge " + name(e.u) + " - " + name(e.v) +
                       " was oriented from the data and cannot be overridden");
    }
    open.erase(e);
    overridden.insert(e);
    directed[e] = d;
  }

  // A collider introduced by an override must be backed by the data.
  std::vector<std::vector<std::size_t>> parents(n);
  for (const auto& [e, d] : directed) parents[d.to].push_back(d.from);
  for (std::size_t v = 0; v < n; ++v) {
    auto& ps = parents[v];
    std::sort(ps.begin(), ps.end());
    for (std::size_t x = 0; x < ps.size(); ++x) {
      for (std::size_t y = x + 1; y < ps.size(); ++y) {
        if (!overridden.contains(Edge(ps[x], v)) && !overridden.contains(Edge(ps[y], v))) continue;
        if (!independent(src, ps[x], ps[y], oracle)) {
          throw InputError("override makes " + name(ps[x]) + " and " + name(ps[y]) +
                           " co-parents of " + name(v) +
                           ", but the data shows them dependent (not a collider)");
        }
      }
    }
  }

  DirectedStructure out;
  out.n = n;

  // Remaining fragments are rooted and directed outward.
  std::vector<std::vector<std::size_t>> fragment_adj(n);
  for (const auto& e : open) {
    fragment_adj[e.u].push_back(e.v);
    fragment_adj[e.v].push_back(e.u);
  }
  std::vector<bool> visited(n, false);
  for (std::size_t start = 0; start < n; ++start) {
    if (visited[start] || fragment_adj[start].empty()) continue;
    std::vector<std::size_t> members;
    std::vector<std::size_t> stack{start};
    visited[start] = true;
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      members.push_back(v);
      for (std::size_t w : fragment_adj[v]) {
        if (!visited[w]) {
          visited[w] = true;
          stack.push_back(w);
        }
      }
    }
    std::sort(members.begin(), members.end());
    std::size_t root = members.front();
    std::size_t with_parents = 0;
    for (std::size_t v : members) {
      if (parents[v].empty()) continue;
      if (with_parents++ == 0) root = v;
    }
    if (with_parents > 1) {
      out.warnings.push_back("completing the fragment rooted at " + name(root) +
                             " adds an unverified parent to a node that already has one");
    }

    std::vector<std::size_t> queue{root};
    std::set<std::size_t> placed{root};
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const std::size_t v = queue[head];
      for (std::size_t w : fragment_adj[v]) {
        if (placed.insert(w).second) {
          directed[Edge(v, w)] = {v, w};
          parents[w].push_back(v);
          queue.push_back(w);
        }
      }
    }
  }

  for (const auto& [e, d] : directed) out.edges.push_back(d);
  std::sort(out.edges.begin(), out.edges.end());
  if (out.edges.size() + 1 != n) throw InternalError("completion did not direct every edge");
  return out;
}

FitResult fit_parameters(const DistributionSource& src, const DirectedStructure& directed,
                         double smoothing) {
  if (!(smoothing >= 0.0)) throw InputError("smoothing must be non-negative");
  const auto& vars = src.variables();
  if (directed.n != vars.size()) throw InputError("structure and distribution have different sizes");

  const auto parents = directed.parent_lists();
  std::vector<std::vector<double>> cpts(vars.size());
  std::vector<std::string> warnings;

  for (std::size_t i = 0; i < vars.size(); ++i) {
    std::vector<std::size_t> family = parents[i];
    family.push_back(i);
    // Row-major over (parents..., child): exactly the CPT layout.
    std::vector<double> mass = marginal(src, family);
    const auto card = static_cast<std::size_t>(vars[i].cardinality);
    const std::size_t columns = mass.size() / card;
    if (!src.is_exact()) {
      const auto total = static_cast<double>(src.sample_count());
      for (double& m : mass) m = m * total + smoothing;
    }

    auto& cpt = cpts[i];
    cpt.resize(mass.size());
    std::size_t empty_columns = 0;
    for (std::size_t col = 0; col < columns; ++col) {
      double sum = 0.0;
      for (std::size_t x = 0; x < card; ++x) sum += mass[col * card + x];
      for (std::size_t x = 0; x < card; ++x) {
        cpt[col * card + x] = sum > 0.0 ? mass[col * card + x] / sum : 1.0 / static_cast<double>(card);
      }
      if (sum <= 0.0) ++empty_columns;
    }
    if (empty_columns > 0) {
      warnings.push_back("CPT of " + vars[i].name + ": " + std::to_string(empty_columns) +
                         " parent configuration(s) without mass set to uniform");
    }
  }
  return {Polytree(vars, parents, std::move(cpts)), std::move(warnings)};
}

}  // namespace polytree
