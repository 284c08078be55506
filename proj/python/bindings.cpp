#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "polytree/error.hpp"
#include "polytree/generate.hpp"
#include "polytree/info.hpp"
#include "polytree/io.hpp"
#include "polytree/pipeline.hpp"

namespace py = pybind11;
using namespace polytree;
using nlohmann::json;

namespace {

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  }
}

std::vector<VariableSpec> specs(const std::vector<std::pair<std::string, int>>& vars) {
  std::vector<VariableSpec> out;
  for (const auto& [name, card] : vars) out.push_back({name, card});
  return out;
}

std::vector<std::pair<std::string, int>> pairs(const std::vector<VariableSpec>& vars) {
  std::vector<std::pair<std::string, int>> out;
  for (const auto& v : vars) out.emplace_back(v.name, v.cardinality);
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> edge_pairs(const std::vector<Edge>& edges) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (const auto& e : edges) out.emplace_back(e.u, e.v);
  return out;
}

IndependenceOracle make_oracle(const DistributionSource& src, const std::string& mode,
                               std::optional<double> epsilon, std::optional<double> tau,
                               std::optional<double> alpha) {
  if (mode == "exact") return IndependenceOracle::exact(epsilon.value_or(1e-9));
  if (mode == "fixed") return IndependenceOracle::fixed(tau.value_or(0.01));
  if (mode == "gtest") return IndependenceOracle::gtest(alpha.value_or(0.01));
  if (mode.empty()) return IndependenceOracle::default_for(src);
  throw ConfigError("unknown oracle '" + mode + "'");
}

std::string learn_json(const DistributionSource& src, const std::string& oracle,
                       std::optional<double> epsilon, std::optional<double> tau,
                       std::optional<double> alpha, std::optional<double> tie_tolerance,
                       bool degenerate, bool fit, double smoothing,
                       const std::vector<std::pair<std::string, std::string>>& orient) {
  LearnOptions opt;
  opt.oracle = make_oracle(src, oracle, epsilon, tau, alpha);
  opt.tie_tolerance = tie_tolerance;
  opt.degenerate_mode = degenerate;
  opt.fit = fit;
  opt.smoothing = smoothing;
  for (const auto& [from, to] : orient) {
    const auto a = src.index_of(from);
    const auto b = src.index_of(to);
    if (!a || !b) throw InputError("unknown variable in orientation " + from + "->" + to);
    opt.overrides.directions.push_back({*a, *b});
  }
  return result_to_json(learn(src, opt)).dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Poly-tree structure recovery";

  auto error = py::register_exception<Error>(m, "PolytreeError", PyExc_ValueError);
  py::register_exception<InputError>(m, "InputError", error.ptr());
  py::register_exception<ParseError>(m, "ParseError", error.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", error.ptr());
  py::register_exception<DegeneracyError>(m, "DegeneracyError", error.ptr());
  py::register_exception<InternalError>(m, "InternalError", PyExc_RuntimeError);

  py::class_<Polytree>(m, "Polytree")
      .def(py::init([](const std::vector<std::pair<std::string, int>>& vars,
                       std::vector<std::vector<std::size_t>> parents,
                       std::vector<std::vector<double>> cpts) {
             return Polytree(specs(vars), std::move(parents), std::move(cpts));
           }),
           py::arg("variables"), py::arg("parents"), py::arg("cpts"))
      .def_static("from_json", [](const std::string& text) {
        return io::model_from_json(parse(text));
      })
      .def_static("load", &io::read_model, py::arg("path"))
      .def("to_json", [](const Polytree& p) { return io::model_to_json(p).dump(); })
      .def("save", [](const Polytree& p, const std::string& path) { io::write_model(path, p); })
      .def_property_readonly("variables", [](const Polytree& p) { return pairs(p.variables()); })
      .def("__len__", &Polytree::size)
      .def("parents", &Polytree::parents, py::arg("i"))
      .def("children", &Polytree::children, py::arg("i"))
      .def("cpt", &Polytree::cpt, py::arg("i"))
      .def("index_of", &Polytree::index_of, py::arg("name"))
      .def("edges",
           [](const Polytree& p) {
             std::vector<std::pair<std::size_t, std::size_t>> out;
             for (const auto& e : p.edges()) out.emplace_back(e.from, e.to);
             return out;
           })
      .def("probability", &joint_probability, py::arg("assignment"))
      .def("basin_edges", [](const Polytree& p) {
        std::vector<std::pair<std::size_t, std::size_t>> out;
        for (const auto& e : causal_basin_edges(p)) out.emplace_back(e.from, e.to);
        return out;
      });

  py::class_<DistributionSource>(m, "Source")
      .def_static("factored", &DistributionSource::factored, py::arg("model"))
      .def_static(
          "explicit",
          [](const std::vector<std::pair<std::string, int>>& vars, std::vector<double> probs) {
            return DistributionSource::explicit_table(specs(vars), std::move(probs));
          },
          py::arg("variables"), py::arg("probabilities"))
      .def_static(
          "empirical",
          [](const std::vector<std::pair<std::string, int>>& vars,
             const std::vector<Assignment>& rows) {
            return DistributionSource::empirical(Dataset(specs(vars), rows));
          },
          py::arg("variables"), py::arg("rows"))
      .def_static("from_jpdf", &io::read_jpdf, py::arg("path"))
      .def_static(
          "from_csv",
          [](const std::string& path) { return DistributionSource::empirical(io::read_csv(path)); },
          py::arg("path"))
      .def_property_readonly("variables",
                             [](const DistributionSource& s) { return pairs(s.variables()); })
      .def_property_readonly("is_exact", &DistributionSource::is_exact)
      .def("index_of", &DistributionSource::index_of, py::arg("name"))
      .def("__len__", &DistributionSource::size);

  m.def("marginal",
        [](const DistributionSource& src, const std::vector<std::size_t>& vars) {
          return marginal(src, vars);
        },
        py::arg("source"), py::arg("variables"));
  m.def("mutual_information",
        [](const DistributionSource& src, std::size_t i, std::size_t j) {
          return mutual_information(pair_marginal(src, i, j));
        },
        py::arg("source"), py::arg("i"), py::arg("j"));
  m.def("conditional_mutual_information",
        [](const DistributionSource& src, std::size_t i, std::size_t j, std::size_t k) {
          return conditional_mutual_information(triple_marginal(src, i, j, k));
        },
        py::arg("source"), py::arg("i"), py::arg("j"), py::arg("given"));
  m.def("closeness", &closeness, py::arg("source"), py::arg("model"));

  m.def("compute_weights",
        [](const DistributionSource& src) {
          std::vector<std::tuple<std::size_t, std::size_t, double>> out;
          const auto weights = compute_weights(src);
          for (const auto& w : weights.entries()) {
            out.emplace_back(w.edge.u, w.edge.v, w.weight);
          }
          return out;
        },
        py::arg("source"));
  m.def("mwst",
        [](std::size_t n, const std::vector<std::tuple<std::size_t, std::size_t, double>>& weights,
           double tolerance) {
          std::vector<WeightedEdge> entries;
          for (const auto& [u, v, w] : weights) entries.push_back({Edge(u, v), w});
          const auto sk = mwst(WeightedEdgeSet(n, entries), tolerance);
          std::vector<std::vector<std::pair<std::size_t, std::size_t>>> ties;
          for (const auto& group : sk.tie_report()) ties.push_back(edge_pairs(group));
          return py::make_tuple(edge_pairs(sk.edges()), ties);
        },
        py::arg("n"), py::arg("weights"), py::arg("tolerance") = kExactTieTolerance);

  m.def("learn_json", &learn_json, py::arg("source"), py::arg("oracle") = "",
        py::arg("epsilon") = py::none(), py::arg("tau") = py::none(), py::arg("alpha") = py::none(),
        py::arg("tie_tolerance") = py::none(), py::arg("degenerate") = false,
        py::arg("fit") = false, py::arg("smoothing") = 0.0,
        py::arg("orient") = std::vector<std::pair<std::string, std::string>>{});
  m.def("evaluate_json",
        [](const std::string& result, const Polytree& truth) {
          return eval_to_json(evaluate(result_from_json(parse(result)), truth)).dump();
        },
        py::arg("result"), py::arg("truth"));
  m.def("to_dot",
        [](const std::string& result) { return to_dot(result_from_json(parse(result))); },
        py::arg("result"));

  m.def("sample", &sample_rows, py::arg("model"), py::arg("n"), py::arg("seed") = 0);
  m.def("random_polytree",
        [](std::size_t n_vars, int max_card, int max_parents, double strength_floor,
           std::uint64_t seed) {
          RandomPolytreeOptions opt;
          opt.n_vars = n_vars;
          opt.max_card = max_card;
          opt.max_parents = max_parents;
          opt.strength_floor = strength_floor;
          opt.seed = seed;
          return random_polytree(opt);
        },
        py::arg("n_vars"), py::arg("max_card") = 2, py::arg("max_parents") = 2,
        py::arg("strength_floor") = 0.01, py::arg("seed") = 0);
  m.def("check_nondegeneracy",
        [](const Polytree& model, double floor_bits) {
          const auto r = check_nondegeneracy(model, floor_bits);
          std::vector<std::vector<std::pair<std::size_t, std::size_t>>> ties;
          for (const auto& group : r.weight_ties) ties.push_back(edge_pairs(group));
          py::dict out;
          out["passed"] = r.passed;
          out["violations"] = r.violations;
          out["weight_ties"] = ties;
          return out;
        },
        py::arg("model"), py::arg("floor") = 0.01);
}
