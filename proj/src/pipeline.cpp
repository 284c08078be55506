#include "polytree/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include "polytree/error.hpp"
#include "polytree/io.hpp"

namespace polytree {

using nlohmann::json;

namespace {

std::string fmt_bits(double bits) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", bits);
  return buf;
}

std::string edge_list(const std::vector<Edge>& edges, const std::vector<VariableSpec>& vars) {
  std::string out;
  for (const auto& e : edges) {
    if (!out.empty()) out += ", ";
    out += vars[e.u].name + " - " + vars[e.v].name;
  }
  return out;
}

std::size_t index_field(const json& j, const char* what) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) {
    throw ParseError(std::string("result: '") + what + "' must be a non-negative integer");
  }
  return j.get<std::size_t>();
}

Edge edge_from_json(const json& j, std::size_t n) {
  if (!j.is_array() || j.size() < 2) throw ParseError("result: an edge must be [i, j]");
  const std::size_t a = index_field(j[0], "edge");
  const std::size_t b = index_field(j[1], "edge");
  if (a >= n || b >= n || a == b) throw ParseError("result: edge index out of range");
  return Edge(a, b);
}

std::string dot_id(const std::string& name) {
  std::string out = "\"";
  for (char c : name) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

LearnResult learn(const DistributionSource& src, const LearnOptions& options) {
  if (src.size() < 2) throw InputError("learning needs at least two variables");
  const IndependenceOracle oracle = options.oracle.value_or(IndependenceOracle::default_for(src));
  const double tolerance = options.tie_tolerance.value_or(
      src.is_exact() ? kExactTieTolerance : kEmpiricalTieTolerance);
  const auto& vars = src.variables();

  auto weights = compute_weights(src);
  const Skeleton sk = mwst(weights, tolerance);

  std::vector<std::string> warnings;
  for (const auto& group : sk.tie_report()) {
    std::string msg = "weight tie within " + fmt_bits(tolerance) +
                      " bits among candidate edges {" + edge_list(group, vars) +
                      "}: the skeleton is not unique";
    if (!options.degenerate_mode) msg += "; consider degenerate mode (--degenerate)";
    warnings.push_back(std::move(msg));
  }
  for (const auto& e : sk.edges()) {
    if (independent(src, e.u, e.v, oracle)) {
      warnings.push_back("skeleton edge " + vars[e.u].name + " - " + vars[e.v].name +
                         " has weight " + fmt_bits(weights.weight(e.u, e.v)) + " bits, judged " +
                         "independent by " + oracle.describe() + ": no usable dependence");
    }
  }

  auto rs = recover_directions(src, sk, oracle, options.degenerate_mode);
  warnings.insert(warnings.end(), rs.warnings.begin(), rs.warnings.end());

  std::optional<Polytree> model;
  if (options.fit) {
    const auto directed = complete_orientation(rs, options.overrides, src, oracle);
    warnings.insert(warnings.end(), directed.warnings.begin(), directed.warnings.end());
    auto fitted = fit_parameters(src, directed, options.smoothing);
    warnings.insert(warnings.end(), fitted.warnings.begin(), fitted.warnings.end());
    model = std::move(fitted.model);
  } else if (!options.overrides.directions.empty()) {
    throw InputError("orientation overrides only apply when fitting parameters");
  }

  return {vars, std::move(weights), std::move(rs), std::move(model), std::move(warnings)};
}

json result_to_json(const LearnResult& result) {
  json names = json::array();
  for (const auto& v : result.variables) names.push_back(v.name);

  json weights = json::array();
  for (const auto& w : result.weights.entries()) {
    weights.push_back({w.edge.u, w.edge.v, w.weight});
  }
  json skeleton = json::array();
  for (const auto& e : result.structure.skeleton.edges()) skeleton.push_back({e.u, e.v});

  json edges = json::array();
  for (const auto& eo : result.structure.edges) {
    json e = {{"u", eo.edge.u}, {"v", eo.edge.v}};
    if (eo.state == EdgeState::Directed) {
      e["state"] = "directed";
      e["from"] = eo.from;
    } else {
      e["state"] = "undetermined";
    }
    edges.push_back(std::move(e));
  }

  json basins = json::array();
  for (const auto& basin : result.structure.basins) {
    json b = json::array();
    for (const auto& e : basin) b.push_back({e.u, e.v});
    basins.push_back(std::move(b));
  }

  json out = {{"variables", std::move(names)}, {"weights", std::move(weights)},
              {"skeleton", std::move(skeleton)}, {"edges", std::move(edges)},
              {"basins", std::move(basins)}, {"warnings", result.warnings}};
  if (result.model) out["model"] = io::model_to_json(*result.model);
  return out;
}

ResultView result_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("result file must hold a JSON object");
  if (!j.contains("variables") || !j["variables"].is_array()) {
    throw ParseError("result: missing 'variables' array");
  }
  ResultView view;
  for (const auto& name : j["variables"]) {
    if (!name.is_string()) throw ParseError("result: variable names must be strings");
    view.names.push_back(name.get<std::string>());
  }
  const std::size_t n = view.names.size();

  if (!j.contains("edges") || !j["edges"].is_array()) throw ParseError("result: missing 'edges'");
  for (const auto& e : j["edges"]) {
    if (!e.is_object() || !e.contains("u") || !e.contains("v") || !e.contains("state")) {
      throw ParseError("result: each edge needs 'u', 'v' and 'state'");
    }
    EdgeOrientation eo;
    eo.edge = edge_from_json(json::array({e["u"], e["v"]}), n);
    const auto state = e["state"].is_string() ? e["state"].get<std::string>() : std::string{};
    if (state == "directed") {
      if (!e.contains("from")) throw ParseError("result: directed edge without 'from'");
      eo.state = EdgeState::Directed;
      eo.from = index_field(e["from"], "from");
      if (eo.from != eo.edge.u && eo.from != eo.edge.v) {
        throw ParseError("result: 'from' is not an endpoint of its edge");
      }
      eo.to = eo.from == eo.edge.u ? eo.edge.v : eo.edge.u;
    } else if (state == "undetermined") {
      eo.state = EdgeState::Undetermined;
    } else {
      throw ParseError("result: unknown edge state '" + state + "'");
    }
    view.edges.push_back(eo);
  }

  for (const auto& basin : j.value("basins", json::array())) {
    if (!basin.is_array()) throw ParseError("result: a basin must be a list of edges");
    std::vector<Edge> b;
    for (const auto& e : basin) b.push_back(edge_from_json(e, n));
    view.basins.push_back(std::move(b));
  }
  for (const auto& w : j.value("warnings", json::array())) {
    if (!w.is_string()) throw ParseError("result: warnings must be strings");
    view.warnings.push_back(w.get<std::string>());
  }
  return view;
}

EvalReport evaluate(const ResultView& result, const Polytree& truth) {
  std::vector<std::size_t> to_truth;
  for (const auto& name : result.names) {
    const auto idx = truth.index_of(name);
    if (!idx) throw InputError("variable '" + name + "' is not in the ground-truth model");
    to_truth.push_back(*idx);
  }
  if (result.names.size() != truth.size() ||
      std::set<std::size_t>(to_truth.begin(), to_truth.end()).size() != to_truth.size()) {
    throw InputError("result and ground-truth model have different variable sets");
  }

  std::set<Edge> truth_skeleton;
  std::set<DirectedEdge> truth_directed;
  for (const auto& e : truth.edges()) {
    truth_skeleton.insert(Edge(e.from, e.to));
    truth_directed.insert(e);
  }
  const auto basin_list = causal_basin_edges(truth);
  const std::set<DirectedEdge> basin(basin_list.begin(), basin_list.end());
  std::set<Edge> non_basin = truth_skeleton;
  for (const auto& e : basin) non_basin.erase(Edge(e.from, e.to));

  std::set<Edge> learned;
  std::set<DirectedEdge> learned_directed;
  std::set<Edge> learned_undetermined;
  for (const auto& eo : result.edges) {
    const Edge e(to_truth[eo.edge.u], to_truth[eo.edge.v]);
    learned.insert(e);
    if (eo.state == EdgeState::Directed) {
      learned_directed.insert({to_truth[eo.from], to_truth[eo.to]});
    } else {
      learned_undetermined.insert(e);
    }
  }

  EvalReport report;
  std::size_t hits = 0;
  for (const auto& e : learned) hits += truth_skeleton.count(e);
  report.skeleton_precision = learned.empty() ? 1.0 : static_cast<double>(hits) / learned.size();
  report.skeleton_recall =
      truth_skeleton.empty() ? 1.0 : static_cast<double>(hits) / truth_skeleton.size();
  const double pr = report.skeleton_precision + report.skeleton_recall;
  report.skeleton_f1 = pr > 0.0 ? 2.0 * report.skeleton_precision * report.skeleton_recall / pr : 0.0;

  std::size_t correct = 0;
  for (const auto& e : basin) correct += learned_directed.count(e);
  report.orientation_accuracy = basin.empty() ? 1.0 : static_cast<double>(correct) / basin.size();
  for (const auto& e : learned_directed) {
    report.reversed_edges += truth_directed.count(DirectedEdge{e.to, e.from});
  }
  report.undetermined_exact = learned_undetermined == non_basin;
  report.warnings = result.warnings;
  return report;
}

json eval_to_json(const EvalReport& report) {
  return {{"skeleton_precision", report.skeleton_precision},
          {"skeleton_recall", report.skeleton_recall},
          {"skeleton_f1", report.skeleton_f1},
          {"orientation_accuracy", report.orientation_accuracy},
          {"reversed_edges", report.reversed_edges},
          {"undetermined_exact", report.undetermined_exact},
          {"warnings", report.warnings}};
}

std::string to_dot(const ResultView& result) {
  std::ostringstream out;
  out << "digraph polytree {\n";
  std::vector<bool> clustered(result.names.size(), false);
  std::map<Edge, const EdgeOrientation*> by_edge;
  for (const auto& eo : result.edges) by_edge[eo.edge] = &eo;

  for (std::size_t k = 0; k < result.basins.size(); ++k) {
    out << "  subgraph cluster_" << k << " {\n";
    out << "    label=\"basin " << k << "\";\n";
    std::set<std::size_t> nodes;
    for (const auto& e : result.basins[k]) {
      nodes.insert(e.u);
      nodes.insert(e.v);
    }
    for (std::size_t v : nodes) {
      clustered[v] = true;
      out << "    " << dot_id(result.names[v]) << ";\n";
    }
    for (const auto& e : result.basins[k]) {
      const auto it = by_edge.find(e);
      if (it == by_edge.end() || it->second->state != EdgeState::Directed) continue;
      out << "    " << dot_id(result.names[it->second->from]) << " -> "
          << dot_id(result.names[it->second->to]) << ";\n";
    }
    out << "  }\n";
  }

  for (std::size_t v = 0; v < result.names.size(); ++v) {
    if (!clustered[v]) out << "  " << dot_id(result.names[v]) << ";\n";
  }

  std::set<Edge> in_basin;
  for (const auto& basin : result.basins) in_basin.insert(basin.begin(), basin.end());
  for (const auto& eo : result.edges) {
    if (eo.state == EdgeState::Directed) {
      if (in_basin.contains(eo.edge)) continue;
      out << "  " << dot_id(result.names[eo.from]) << " -> " << dot_id(result.names[eo.to])
          << ";\n";
    } else {
      out << "  " << dot_id(result.names[eo.edge.u]) << " -> " << dot_id(result.names[eo.edge.v])
          << " [dir=none, style=dashed];\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace polytree
