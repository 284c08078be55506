#include "polytree/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>
#include <string>

#include "polytree/error.hpp"

namespace polytree {

namespace {

constexpr double kColumnTolerance = 1e-12;
constexpr double kJointTolerance = 1e-9;

std::vector<std::size_t> strides_for(std::span<const VariableSpec> vars) {
  std::vector<std::size_t> strides(vars.size(), 1);
  for (std::size_t k = vars.size(); k-- > 1;) {
    strides[k - 1] = strides[k] * static_cast<std::size_t>(vars[k].cardinality);
  }
  return strides;
}

void check_assignment(std::span<const VariableSpec> vars, const Assignment& a) {
  if (a.size() != vars.size()) {
    throw InputError("assignment has " + std::to_string(a.size()) + " values, expected " +
                     std::to_string(vars.size()));
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < 0 || a[i] >= vars[i].cardinality) {
      throw InputError("value " + std::to_string(a[i]) + " out of range for variable '" +
                       vars[i].name + "'");
    }
  }
}

}  // namespace

std::size_t table_size(std::span<const VariableSpec> vars) {
  std::size_t cells = 1;
  for (const auto& v : vars) cells *= static_cast<std::size_t>(v.cardinality);
  return cells;
}

void validate_variables(std::span<const VariableSpec> vars) {
  std::set<std::string> seen;
  for (const auto& v : vars) {
    if (v.name.empty()) throw InputError("variable with empty name");
    if (v.cardinality < 2) {
      throw InputError("variable '" + v.name + "' has cardinality " +
                       std::to_string(v.cardinality) + " (must be >= 2)");
    }
    if (!seen.insert(v.name).second) throw InputError("duplicate variable name '" + v.name + "'");
  }
}

bool next_assignment(Assignment& a, std::span<const VariableSpec> vars) {
  for (std::size_t k = a.size(); k-- > 0;) {
    if (++a[k] < vars[k].cardinality) return true;
    a[k] = 0;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Polytree

Polytree::Polytree(std::vector<VariableSpec> variables,
                   std::vector<std::vector<std::size_t>> parents,
                   std::vector<std::vector<double>> cpts)
    : variables_(std::move(variables)), parents_(std::move(parents)), cpts_(std::move(cpts)) {
  const std::size_t n = variables_.size();
  if (n == 0) throw InputError("model has no variables");
  validate_variables(variables_);
  if (parents_.size() != n) throw InputError("parent lists do not match the variable count");
  if (cpts_.size() != n) throw InputError("CPT count does not match the variable count");

  children_.assign(n, {});
  std::size_t edge_count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::set<std::size_t> distinct;
    for (std::size_t p : parents_[i]) {
      if (p >= n) throw InputError("parent index out of range for '" + variables_[i].name + "'");
      if (p == i) throw InputError("variable '" + variables_[i].name + "' is its own parent");
      if (!distinct.insert(p).second) {
        throw InputError("repeated parent of '" + variables_[i].name + "'");
      }
      children_[p].push_back(i);
    }
    edge_count += parents_[i].size();
  }
  if (edge_count != n - 1) {
    throw InputError("a poly-tree over " + std::to_string(n) + " variables needs " +
                     std::to_string(n - 1) + " edges, got " + std::to_string(edge_count));
  }

  // N-1 edges + connected <=> tree.
  std::vector<std::vector<std::size_t>> adjacency(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t p : parents_[i]) {
      adjacency[i].push_back(p);
      adjacency[p].push_back(i);
    }
  }
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    for (std::size_t w : adjacency[v]) {
      if (!seen[w]) {
        seen[w] = true;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  if (reached != n) throw InputError("model graph is not connected");

  // Kahn's algorithm; a tree skeleton rules out directed cycles but the order
  // is needed for sampling anyway.
  std::vector<std::size_t> indegree(n);
  for (std::size_t i = 0; i < n; ++i) indegree[i] = parents_[i].size();
  std::vector<std::size_t> ready;
  for (std::size_t i = n; i-- > 0;) {
    if (indegree[i] == 0) ready.push_back(i);
  }
  while (!ready.empty()) {
    const std::size_t v = ready.back();
    ready.pop_back();
    topo_order_.push_back(v);
    for (std::size_t c : children_[v]) {
      if (--indegree[c] == 0) ready.push_back(c);
    }
  }
  if (topo_order_.size() != n) throw InputError("model graph has a directed cycle");

  for (std::size_t i = 0; i < n; ++i) {
    std::size_t columns = 1;
    for (std::size_t p : parents_[i]) columns *= static_cast<std::size_t>(cardinality(p));
    const auto card = static_cast<std::size_t>(cardinality(i));
    if (cpts_[i].size() != columns * card) {
      throw InputError("CPT of '" + variables_[i].name + "' has " +
                       std::to_string(cpts_[i].size()) + " entries, expected " +
                       std::to_string(columns * card));
    }
    for (std::size_t col = 0; col < columns; ++col) {
      double sum = 0.0;
      for (std::size_t x = 0; x < card; ++x) {
        const double p = cpts_[i][col * card + x];
        if (!(p >= 0.0 && p <= 1.0)) {
          throw InputError("CPT of '" + variables_[i].name + "' has an entry outside [0, 1]");
        }
        sum += p;
      }
      if (std::abs(sum - 1.0) > kColumnTolerance) {
        throw InputError("CPT column " + std::to_string(col) + " of '" + variables_[i].name +
                         "' sums to " + std::to_string(sum));
      }
    }
  }
}

std::optional<std::size_t> Polytree::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    if (variables_[i].name == name) return i;
  }
  return std::nullopt;
}

std::vector<DirectedEdge> Polytree::edges() const {
  std::vector<DirectedEdge> out;
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t p : parents_[i]) out.push_back({p, i});
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t Polytree::parent_configuration(std::size_t i, const Assignment& a) const {
  std::size_t config = 0;
  for (std::size_t p : parents_[i]) {
    config = config * static_cast<std::size_t>(cardinality(p)) + static_cast<std::size_t>(a[p]);
  }
  return config;
}

double joint_probability(const Polytree& model, const Assignment& a) {
  check_assignment(model.variables(), a);
  double prob = 1.0;
  for (std::size_t i = 0; i < model.size(); ++i) {
    const std::size_t row = model.parent_configuration(i, a);
    prob *= model.cpt(i)[row * static_cast<std::size_t>(model.cardinality(i)) +
                         static_cast<std::size_t>(a[i])];
  }
  return prob;
}

// ---------------------------------------------------------------------------
// Dataset

Dataset::Dataset(std::vector<VariableSpec> variables, std::map<Assignment, std::uint64_t> counts)
    : variables_(std::move(variables)), counts_(std::move(counts)) {
  validate_variables(variables_);
  for (auto it = counts_.begin(); it != counts_.end();) {
    check_assignment(variables_, it->first);
    total_ += it->second;
    it = it->second == 0 ? counts_.erase(it) : std::next(it);
  }
  if (total_ == 0) throw InputError("dataset has no records");
}

Dataset::Dataset(std::vector<VariableSpec> variables, std::span<const Assignment> rows)
    : variables_(std::move(variables)) {
  validate_variables(variables_);
  for (const auto& row : rows) {
    check_assignment(variables_, row);
    ++counts_[row];
  }
  total_ = rows.size();
  if (total_ == 0) throw InputError("dataset has no records");
}

// ---------------------------------------------------------------------------
// DistributionSource

DistributionSource DistributionSource::factored(Polytree model) {
  DistributionSource src;
  src.kind_ = Kind::Factored;
  src.variables_ = model.variables();
  if (table_size(src.variables_) > kMaxFactoredCells) {
    throw InputError("model joint table exceeds " + std::to_string(kMaxFactoredCells) +
                     " cells; exact enumeration is not feasible");
  }
  auto joint = std::make_shared<std::vector<double>>();
  joint->reserve(table_size(src.variables_));
  Assignment a(src.variables_.size(), 0);
  do {
    joint->push_back(joint_probability(model, a));
  } while (next_assignment(a, src.variables_));
  src.joint_ = std::move(joint);
  src.model_ = std::make_shared<const Polytree>(std::move(model));
  return src;
}

DistributionSource DistributionSource::explicit_table(std::vector<VariableSpec> variables,
                                                      std::vector<double> probabilities) {
  if (variables.empty()) throw InputError("explicit distribution has no variables");
  validate_variables(variables);
  if (probabilities.size() != table_size(variables)) {
    throw InputError("explicit table has " + std::to_string(probabilities.size()) +
                     " entries, expected " + std::to_string(table_size(variables)));
  }
  double sum = 0.0;
  for (double p : probabilities) {
    if (!(p >= 0.0)) throw InputError("explicit table has a negative or NaN entry");
    sum += p;
  }
  if (std::abs(sum - 1.0) > kJointTolerance) {
    throw InputError("explicit table sums to " + std::to_string(sum));
  }
  DistributionSource src;
  src.kind_ = Kind::Explicit;
  src.variables_ = std::move(variables);
  src.joint_ = std::make_shared<const std::vector<double>>(std::move(probabilities));
  return src;
}

DistributionSource DistributionSource::empirical(Dataset data) {
  DistributionSource src;
  src.kind_ = Kind::Empirical;
  src.variables_ = data.variables();
  src.data_ = std::make_shared<const Dataset>(std::move(data));
  return src;
}

std::optional<std::size_t> DistributionSource::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    if (variables_[i].name == name) return i;
  }
  return std::nullopt;
}

std::span<const double> DistributionSource::joint_table() const {
  if (!joint_) throw InputError("empirical source has no exact joint table");
  return *joint_;
}

std::uint64_t DistributionSource::sample_count() const {
  if (!data_) throw InputError("exact source has no sample count");
  return data_->total();
}

std::vector<double> marginal(const DistributionSource& src, std::span<const std::size_t> vars) {
  const auto& all = src.variables();
  std::vector<VariableSpec> sub;
  for (std::size_t k = 0; k < vars.size(); ++k) {
    if (vars[k] >= all.size()) throw InputError("variable index out of range");
    for (std::size_t m = 0; m < k; ++m) {
      if (vars[m] == vars[k]) throw InputError("repeated variable index in marginal");
    }
    sub.push_back(all[vars[k]]);
  }
  const auto strides = strides_for(sub);
  std::vector<double> out(table_size(sub), 0.0);

  auto cell_of = [&](const Assignment& a) {
    std::size_t cell = 0;
    for (std::size_t k = 0; k < vars.size(); ++k) {
      cell += static_cast<std::size_t>(a[vars[k]]) * strides[k];
    }
    return cell;
  };

  if (src.is_exact()) {
    const auto joint = src.joint_table();
    Assignment a(all.size(), 0);
    std::size_t idx = 0;
    do {
      out[cell_of(a)] += joint[idx++];
    } while (next_assignment(a, all));
  } else {
    const Dataset& data = *src.dataset();
    const auto total = static_cast<double>(data.total());
    for (const auto& [row, count] : data.counts()) {
      out[cell_of(row)] += static_cast<double>(count);
    }
    for (double& p : out) p /= total;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Sampling

std::vector<Assignment> sample_rows(const Polytree& model, std::uint64_t n, std::uint64_t seed) {
  if (n == 0) throw InputError("sample count must be at least 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Assignment> rows;
  rows.reserve(n);
  for (std::uint64_t r = 0; r < n; ++r) {
    Assignment a(model.size(), 0);
    for (std::size_t i : model.topological_order()) {
      const auto card = static_cast<std::size_t>(model.cardinality(i));
      const double* column = model.cpt(i).data() + model.parent_configuration(i, a) * card;
      const double u = unit(rng);
      double acc = 0.0;
      std::size_t x = 0;
      // Falls through to the last value when rounding leaves acc < u.
      for (; x + 1 < card; ++x) {
        acc += column[x];
        if (u < acc) break;
      }
      a[i] = static_cast<int>(x);
    }
    rows.push_back(std::move(a));
  }
  return rows;
}

Dataset sample(const Polytree& model, std::uint64_t n, std::uint64_t seed) {
  const auto rows = sample_rows(model, n, seed);
  return Dataset(model.variables(), rows);
}

// ---------------------------------------------------------------------------
// Causal basins of a known model

std::vector<DirectedEdge> causal_basin_edges(const Polytree& model) {
  std::set<DirectedEdge> basin;
  std::vector<bool> swept(model.size(), false);
  std::vector<std::size_t> frontier;
  for (std::size_t v = 0; v < model.size(); ++v) {
    if (model.parents(v).size() >= 2) frontier.push_back(v);
  }
  // Every node reached here is a multi-parent child or a descendant of one:
  // all edges into it and out of it belong to a basin.
  while (!frontier.empty()) {
    const std::size_t v = frontier.back();
    frontier.pop_back();
    if (swept[v]) continue;
    swept[v] = true;
    for (std::size_t p : model.parents(v)) basin.insert({p, v});
    for (std::size_t c : model.children(v)) {
      basin.insert({v, c});
      frontier.push_back(c);
    }
  }
  return {basin.begin(), basin.end()};
}

}  // namespace polytree
