#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace polytree {

struct VariableSpec {
  std::string name;
  int cardinality = 2;

  bool operator==(const VariableSpec&) const = default;
};

// One value per variable, each in [0, cardinality).
using Assignment = std::vector<int>;

struct DirectedEdge {
  std::size_t from = 0;
  std::size_t to = 0;

  auto operator<=>(const DirectedEdge&) const = default;
};

// Number of cells in the row-major table over `vars` (last variable fastest).
std::size_t table_size(std::span<const VariableSpec> vars);

// Throws InputError unless names are unique and every cardinality is >= 2.
void validate_variables(std::span<const VariableSpec> vars);

// A generating poly-tree: discrete variables, per-variable parent lists and
// conditional probability tables.
//
// CPT layout for variable i with parents (p_1, ..., p_m), in the listed order:
// the parent configuration index is row-major over the parents (p_m fastest)
// and the child's value is fastest overall, so that
//   cpt(i)[config * card(i) + x_i] = P(x_i | parents = config).
//
// The constructor validates the structure: unique names, cardinalities >= 2,
// exactly N-1 edges forming a connected acyclic graph, and every CPT column
// summing to 1 within 1e-12.
class Polytree {
 public:
  Polytree(std::vector<VariableSpec> variables,
           std::vector<std::vector<std::size_t>> parents,
           std::vector<std::vector<double>> cpts);

  std::size_t size() const { return variables_.size(); }
  const std::vector<VariableSpec>& variables() const { return variables_; }
  const VariableSpec& variable(std::size_t i) const { return variables_.at(i); }
  int cardinality(std::size_t i) const { return variables_.at(i).cardinality; }
  const std::vector<std::size_t>& parents(std::size_t i) const { return parents_.at(i); }
  const std::vector<std::size_t>& children(std::size_t i) const { return children_.at(i); }
  const std::vector<double>& cpt(std::size_t i) const { return cpts_.at(i); }
  const std::vector<std::size_t>& topological_order() const { return topo_order_; }
  std::optional<std::size_t> index_of(const std::string& name) const;

  // All edges, sorted by (from, to).
  std::vector<DirectedEdge> edges() const;

  // Row index into cpt(i) for the parent values found in `a`.
  std::size_t parent_configuration(std::size_t i, const Assignment& a) const;

 private:
  std::vector<VariableSpec> variables_;
  std::vector<std::vector<std::size_t>> parents_;
  std::vector<std::vector<std::size_t>> children_;
  std::vector<std::vector<double>> cpts_;
  std::vector<std::size_t> topo_order_;
};

// Sampled records, kept as an assignment -> count association.
class Dataset {
 public:
  Dataset(std::vector<VariableSpec> variables, std::map<Assignment, std::uint64_t> counts);
  Dataset(std::vector<VariableSpec> variables, std::span<const Assignment> rows);

  std::size_t size() const { return variables_.size(); }
  const std::vector<VariableSpec>& variables() const { return variables_; }
  const std::map<Assignment, std::uint64_t>& counts() const { return counts_; }
  std::uint64_t total() const { return total_; }

 private:
  std::vector<VariableSpec> variables_;
  std::map<Assignment, std::uint64_t> counts_;
  std::uint64_t total_ = 0;
};

// Uniform access to P(X): a factored model, an explicit joint table, or
// relative frequencies of a dataset. Immutable; cheap to copy.
class DistributionSource {
 public:
  enum class Kind { Factored, Explicit, Empirical };

  // Largest joint table materialized for exact sources.
  static constexpr std::size_t kMaxFactoredCells = std::size_t{1} << 22;

  static DistributionSource factored(Polytree model);
  // `probabilities` is row-major over `variables`, last variable fastest.
  static DistributionSource explicit_table(std::vector<VariableSpec> variables,
                                           std::vector<double> probabilities);
  static DistributionSource empirical(Dataset data);

  Kind kind() const { return kind_; }
  bool is_exact() const { return kind_ != Kind::Empirical; }
  std::size_t size() const { return variables_.size(); }
  const std::vector<VariableSpec>& variables() const { return variables_; }
  std::optional<std::size_t> index_of(const std::string& name) const;

  // Null unless kind() == Factored / Empirical respectively.
  const Polytree* model() const { return model_.get(); }
  const Dataset* dataset() const { return data_.get(); }

  // Full joint table of an exact source. Throws InputError for Empirical.
  std::span<const double> joint_table() const;
  // Number of records of an Empirical source. Throws InputError otherwise.
  std::uint64_t sample_count() const;

 private:
  DistributionSource() = default;

  Kind kind_ = Kind::Explicit;
  std::vector<VariableSpec> variables_;
  std::shared_ptr<const Polytree> model_;
  std::shared_ptr<const Dataset> data_;
  std::shared_ptr<const std::vector<double>> joint_;
};

// Product over i of P(x_i | parents(i)).
double joint_probability(const Polytree& model, const Assignment& a);

// Joint distribution over `vars` (distinct indices), row-major with the last
// listed variable fastest. Exact sources marginalize the full joint table;
// empirical sources use relative frequencies.
std::vector<double> marginal(const DistributionSource& src, std::span<const std::size_t> vars);

// Ancestral sampling, deterministic for fixed (model, n, seed).
std::vector<Assignment> sample_rows(const Polytree& model, std::uint64_t n, std::uint64_t seed);
Dataset sample(const Polytree& model, std::uint64_t n, std::uint64_t seed);

// Edges lying inside some causal basin: for every node with two or more
// parents, the edges into it, then following the causal flow every edge to a
// descendant together with every edge from that descendant's other parents.
// Sorted by (from, to).
std::vector<DirectedEdge> causal_basin_edges(const Polytree& model);

// Advances `a` to the next assignment in row-major order (last index
// fastest). Returns false after the last one.
bool next_assignment(Assignment& a, std::span<const VariableSpec> vars);

}  // namespace polytree
