#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "polytree/estimate.hpp"
#include "polytree/model.hpp"
#include "polytree/orient.hpp"
#include "polytree/skeleton.hpp"

namespace polytree {

struct LearnOptions {
  std::optional<IndependenceOracle> oracle;  // default_for(src) when empty
  std::optional<double> tie_tolerance;       // 1e-9 exact, 1e-4 empirical
  bool degenerate_mode = false;
  bool fit = false;
  double smoothing = 0.0;
  OrientationOverride overrides;
};

struct LearnResult {
  std::vector<VariableSpec> variables;
  WeightedEdgeSet weights;
  RecoveredStructure structure;
  std::optional<Polytree> model;
  std::vector<std::string> warnings;
};

// Weights -> spanning tree -> orientation -> optional completion and fit.
// Requires at least two variables (InputError otherwise).
LearnResult learn(const DistributionSource& src, const LearnOptions& options = {});

// {variables, weights: [[i,j,bits]], skeleton: [[i,j]],
//  edges: [{u, v, state, from?}], basins: [[[i,j]...]], warnings, model?}
nlohmann::json result_to_json(const LearnResult& result);

// Minimal view of a result file used by eval and DOT export.
struct ResultView {
  std::vector<std::string> names;
  std::vector<EdgeOrientation> edges;
  std::vector<std::vector<Edge>> basins;
  std::vector<std::string> warnings;
};
// Throws ParseError on a malformed result document.
ResultView result_from_json(const nlohmann::json& j);

struct EvalReport {
  double skeleton_precision = 1.0;
  double skeleton_recall = 1.0;
  double skeleton_f1 = 1.0;
  // Fraction of ground-truth basin edges Directed with the true orientation.
  double orientation_accuracy = 1.0;
  std::size_t reversed_edges = 0;
  // Undetermined set equals the ground-truth non-basin edge set.
  bool undetermined_exact = true;
  std::vector<std::string> warnings;
};

// Matches variables by name; throws InputError if the name sets differ.
EvalReport evaluate(const ResultView& result, const Polytree& truth);
nlohmann::json eval_to_json(const EvalReport& report);

// Graphviz rendering: Directed edges as arrows, Undetermined edges dashed
// without arrowheads, one cluster per basin.
std::string to_dot(const ResultView& result);

}  // namespace polytree
