// polytree: sample, learn, inspect and evaluate poly-tree models.
//
// Exit codes: 0 success, 1 usage or parse error, 2 data or validation error,
// 3 internal invariant breach.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "polytree/error.hpp"
#include "polytree/info.hpp"
#include "polytree/io.hpp"
#include "polytree/pipeline.hpp"

namespace {

using namespace polytree;

struct UsageError : Error {
  using Error::Error;
};

struct InputOptions {
  std::string model;
  std::string jpdf;
  std::string data;

  void add_to(CLI::App& cmd) {
    auto* m = cmd.add_option("--model", model, "Model JSON (exact, factored)");
    auto* j = cmd.add_option("--jpdf", jpdf, "Explicit joint table JSON (exact)");
    auto* d = cmd.add_option("--data", data, "CSV records (empirical)");
    m->excludes(j)->excludes(d);
    j->excludes(d);
  }

  bool given() const { return !model.empty() || !jpdf.empty() || !data.empty(); }

  DistributionSource load() const {
    if (!model.empty()) return DistributionSource::factored(io::read_model(model));
    if (!jpdf.empty()) return io::read_jpdf(jpdf);
    if (!data.empty()) return DistributionSource::empirical(io::read_csv(data));
    throw UsageError("one of --model, --jpdf or --data is required");
  }
};

struct OracleOptions {
  std::string mode;
  std::optional<double> epsilon;
  std::optional<double> tau;
  std::optional<double> alpha;
  std::optional<double> tie_tolerance;
  bool degenerate = false;

  void add_to(CLI::App& cmd) {
    cmd.add_option("--oracle", mode, "Independence oracle: exact, fixed or gtest")
        ->check(CLI::IsMember({"exact", "fixed", "gtest"}));
    cmd.add_option("--epsilon", epsilon, "Exact-mode threshold in bits (default 1e-9)");
    cmd.add_option("--tau", tau, "Fixed threshold in bits (default 0.01)");
    cmd.add_option("--alpha", alpha, "G-test significance level (default 0.01)");
    cmd.add_option("--tie-tolerance", tie_tolerance,
                   "Weight tie tolerance in bits (default 1e-9 exact, 1e-4 empirical)");
    cmd.add_flag("--degenerate", degenerate, "Classify triplets by I(A;C|B) > 0");
  }

  IndependenceOracle build(const DistributionSource& src) const {
    if (mode == "exact") return IndependenceOracle::exact(epsilon.value_or(1e-9));
    if (mode == "fixed") return IndependenceOracle::fixed(tau.value_or(0.01));
    if (mode == "gtest") return IndependenceOracle::gtest(alpha.value_or(0.01));
    if (epsilon) return IndependenceOracle::exact(*epsilon);
    if (tau) return IndependenceOracle::fixed(*tau);
    if (alpha) return IndependenceOracle::gtest(*alpha);
    return IndependenceOracle::default_for(src);
  }
};

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    io::write_text_file(path, text);
  }
}

std::size_t variable_index(const DistributionSource& src, const std::string& name) {
  const auto idx = src.index_of(name);
  if (!idx) throw InputError("unknown variable '" + name + "'");
  return *idx;
}

DirectedEdge parse_override(const DistributionSource& src, const std::string& text) {
  const auto arrow = text.find("->");
  if (arrow == std::string::npos) throw UsageError("--orient expects FROM->TO, got '" + text + "'");
  return {variable_index(src, text.substr(0, arrow)), variable_index(src, text.substr(arrow + 2))};
}

LearnResult run_learn(const DistributionSource& src, const OracleOptions& oracle, bool fit,
                      double smoothing, const std::vector<std::string>& orient) {
  if (src.size() < 2) throw UsageError("learning needs at least two variables");
  LearnOptions options;
  options.oracle = oracle.build(src);
  options.tie_tolerance = oracle.tie_tolerance;
  options.degenerate_mode = oracle.degenerate;
  options.fit = fit;
  options.smoothing = smoothing;
  if (!orient.empty() && !fit) throw UsageError("--orient requires --fit");
  for (const auto& o : orient) options.overrides.directions.push_back(parse_override(src, o));
  return learn(src, options);
}

int run(int argc, char** argv) {
  CLI::App app{"Recover poly-tree structure and parameters from distributions or samples"};
  app.require_subcommand(1);

  // sample
  auto* sample_cmd = app.add_subcommand("sample", "Draw records from a model by ancestral sampling");
  std::string sample_model;
  std::uint64_t sample_n = 0;
  std::uint64_t sample_seed = 0;
  std::string sample_out;
  sample_cmd->add_option("--model", sample_model, "Model JSON")->required();
  sample_cmd->add_option("-n", sample_n, "Number of records")->required();
  sample_cmd->add_option("--seed", sample_seed, "Random seed (default 0)");
  sample_cmd->add_option("-o,--output", sample_out, "Output CSV (default stdout)");

  // learn
  auto* learn_cmd = app.add_subcommand("learn", "Recover skeleton, orientations and parameters");
  InputOptions learn_in;
  OracleOptions learn_oracle;
  bool learn_fit = false;
  double learn_smoothing = 0.0;
  std::vector<std::string> learn_orient;
  std::string learn_out;
  std::string learn_dot;
  learn_in.add_to(*learn_cmd);
  learn_oracle.add_to(*learn_cmd);
  learn_cmd->add_flag("--fit", learn_fit, "Complete orientations and fit CPTs");
  learn_cmd->add_option("--smoothing", learn_smoothing, "Additive smoothing for empirical counts")
      ->check(CLI::NonNegativeNumber);
  learn_cmd->add_option("--orient", learn_orient,
                        "Direction FROM->TO for an undetermined edge (repeatable)");
  learn_cmd->add_option("-o,--output", learn_out, "Result JSON (default stdout)");
  learn_cmd->add_option("--dot", learn_dot, "Also write a Graphviz rendering");

  // mi
  auto* mi_cmd = app.add_subcommand("mi", "Print I(A;B) or I(A;B|C) in bits");
  InputOptions mi_in;
  std::string mi_a;
  std::string mi_b;
  std::string mi_given;
  mi_in.add_to(*mi_cmd);
  mi_cmd->add_option("A", mi_a, "First variable")->required();
  mi_cmd->add_option("B", mi_b, "Second variable")->required();
  mi_cmd->add_option("--given", mi_given, "Conditioning variable");

  // eval
  auto* eval_cmd = app.add_subcommand("eval", "Score a learned structure against a true model");
  std::string eval_result;
  std::string eval_truth;
  std::string eval_out;
  InputOptions eval_in;
  OracleOptions eval_oracle;
  eval_cmd->add_option("--result", eval_result, "Result JSON from learn");
  eval_cmd->add_option("--truth", eval_truth, "Ground-truth model JSON")->required();
  eval_cmd->add_option("-o,--output", eval_out, "Report JSON (default stdout)");
  eval_in.add_to(*eval_cmd);
  eval_oracle.add_to(*eval_cmd);

  // dot
  auto* dot_cmd = app.add_subcommand("dot", "Render a result JSON as Graphviz DOT");
  std::string dot_result;
  std::string dot_out;
  dot_cmd->add_option("--result", dot_result, "Result JSON from learn")->required();
  dot_cmd->add_option("-o,--output", dot_out, "Output DOT (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (*sample_cmd) {
    if (sample_n == 0) throw UsageError("-n must be at least 1");
    const auto model = io::read_model(sample_model);
    const auto rows = sample_rows(model, sample_n, sample_seed);
    std::ostringstream csv;
    io::write_csv(csv, model.variables(), rows);
    emit(sample_out, csv.str());
  } else if (*learn_cmd) {
    const auto src = learn_in.load();
    const auto result = run_learn(src, learn_oracle, learn_fit, learn_smoothing, learn_orient);
    const auto doc = result_to_json(result);
    emit(learn_out, doc.dump(2) + "\n");
    if (!learn_dot.empty()) io::write_text_file(learn_dot, to_dot(result_from_json(doc)));
  } else if (*mi_cmd) {
    const auto src = mi_in.load();
    const std::size_t a = variable_index(src, mi_a);
    const std::size_t b = variable_index(src, mi_b);
    double bits = 0.0;
    if (mi_given.empty()) {
      if (a == b) throw UsageError("A and B must differ");
      bits = mutual_information(pair_marginal(src, a, b));
    } else {
      const std::size_t c = variable_index(src, mi_given);
      if (a == b || a == c || b == c) throw UsageError("A, B and --given must be distinct");
      bits = conditional_mutual_information(triple_marginal(src, a, b, c));
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f\n", bits);
    std::cout << buf;
  } else if (*eval_cmd) {
    const auto truth = io::read_model(eval_truth);
    ResultView view;
    if (!eval_result.empty()) {
      if (eval_in.given()) throw UsageError("--result excludes --model/--jpdf/--data");
      view = result_from_json(io::read_json_file(eval_result));
    } else {
      const auto src = eval_in.load();
      view = result_from_json(result_to_json(run_learn(src, eval_oracle, false, 0.0, {})));
    }
    emit(eval_out, eval_to_json(evaluate(view, truth)).dump(2) + "\n");
  } else if (*dot_cmd) {
    emit(dot_out, to_dot(result_from_json(io::read_json_file(dot_result))));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const polytree::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const polytree::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 1;
  } catch (const polytree::InternalError& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  } catch (const polytree::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
