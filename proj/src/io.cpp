#include "polytree/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "polytree/error.hpp"

namespace polytree::io {

using nlohmann::json;

namespace {

std::vector<VariableSpec> variables_from_json(const json& j) {
  if (!j.contains("variables") || !j["variables"].is_array()) {
    throw ParseError("missing 'variables' array");
  }
  std::vector<VariableSpec> vars;
  for (std::size_t k = 0; k < j["variables"].size(); ++k) {
    const auto& v = j["variables"][k];
    const std::string where = "variables[" + std::to_string(k) + "]";
    if (!v.is_object() || !v.contains("name") || !v["name"].is_string()) {
      throw ParseError(where + ": missing string field 'name'");
    }
    if (!v.contains("cardinality") || !v["cardinality"].is_number_integer()) {
      throw ParseError(where + " ('" + v["name"].get<std::string>() +
                       "'): missing integer field 'cardinality'");
    }
    vars.push_back({v["name"].get<std::string>(), v["cardinality"].get<int>()});
  }
  if (vars.empty()) throw ParseError("'variables' is empty");
  try {
    validate_variables(vars);
  } catch (const InputError& e) {
    throw ParseError(e.what());
  }
  return vars;
}

json variables_to_json(std::span<const VariableSpec> vars) {
  json out = json::array();
  for (const auto& v : vars) out.push_back({{"name", v.name}, {"cardinality", v.cardinality}});
  return out;
}

std::vector<double> numbers(const json& arr, const std::string& where) {
  if (!arr.is_array()) throw ParseError(where + ": expected an array of numbers");
  std::vector<double> out;
  out.reserve(arr.size());
  for (const auto& x : arr) {
    if (!x.is_number()) throw ParseError(where + ": non-numeric entry");
    out.push_back(x.get<double>());
  }
  return out;
}

}  // namespace

Polytree model_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("model file must hold a JSON object");
  auto vars = variables_from_json(j);
  auto index_of = [&](const std::string& name) -> std::size_t {
    for (std::size_t i = 0; i < vars.size(); ++i) {
      if (vars[i].name == name) return i;
    }
    throw ParseError("unknown variable '" + name + "'");
  };

  const json parents_obj = j.value("parents", json::object());
  if (!parents_obj.is_object()) throw ParseError("'parents' must be an object");
  std::vector<std::vector<std::size_t>> parents(vars.size());
  for (const auto& [child, list] : parents_obj.items()) {
    const std::size_t c = index_of(child);
    if (!list.is_array()) throw ParseError("parents of '" + child + "' must be an array");
    for (const auto& p : list) {
      if (!p.is_string()) throw ParseError("parents of '" + child + "' must be names");
      parents[c].push_back(index_of(p.get<std::string>()));
    }
  }

  if (!j.contains("cpts") || !j["cpts"].is_object()) throw ParseError("missing 'cpts' object");
  std::vector<std::vector<double>> cpts(vars.size());
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (!j["cpts"].contains(vars[i].name)) {
      throw ParseError("cpts: missing entry for variable '" + vars[i].name + "'");
    }
    cpts[i] = numbers(j["cpts"][vars[i].name], "cpts." + vars[i].name);
  }
  for (const auto& [name, _] : j["cpts"].items()) index_of(name);

  try {
    return Polytree(std::move(vars), std::move(parents), std::move(cpts));
  } catch (const InputError& e) {
    throw ParseError(e.what());
  }
}

json model_to_json(const Polytree& model) {
  json parents = json::object();
  json cpts = json::object();
  for (std::size_t i = 0; i < model.size(); ++i) {
    json list = json::array();
    for (std::size_t p : model.parents(i)) list.push_back(model.variable(p).name);
    parents[model.variable(i).name] = std::move(list);
    cpts[model.variable(i).name] = model.cpt(i);
  }
  return {{"variables", variables_to_json(model.variables())},
          {"parents", std::move(parents)},
          {"cpts", std::move(cpts)}};
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << text;
  if (!out) throw InputError("failed writing '" + path + "'");
}

Polytree read_model(const std::string& path) {
  try {
    return model_from_json(read_json_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void write_model(const std::string& path, const Polytree& model) {
  write_text_file(path, model_to_json(model).dump(2) + "\n");
}

DistributionSource jpdf_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("distribution file must hold a JSON object");
  auto vars = variables_from_json(j);
  std::size_t cells = 1;
  for (const auto& v : vars) {
    cells *= static_cast<std::size_t>(v.cardinality);
    if (cells > kMaxExplicitCells) {
      throw ParseError("explicit table exceeds " + std::to_string(kMaxExplicitCells) + " cells");
    }
  }
  if (!j.contains("probabilities")) throw ParseError("missing 'probabilities' array");
  auto probs = numbers(j["probabilities"], "probabilities");
  try {
    return DistributionSource::explicit_table(std::move(vars), std::move(probs));
  } catch (const InputError& e) {
    throw ParseError(e.what());
  }
}

DistributionSource read_jpdf(const std::string& path) {
  try {
    return jpdf_from_json(read_json_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

Dataset read_csv(std::istream& in) {
  auto split = [](const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      const auto b = cell.find_first_not_of(" \t\r");
      const auto e = cell.find_last_not_of(" \t\r");
      cells.push_back(b == std::string::npos ? std::string{} : cell.substr(b, e - b + 1));
    }
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
  };

  std::string line;
  if (!std::getline(in, line)) throw ParseError("CSV is empty");
  const auto header = split(line);
  if (header.empty()) throw ParseError("CSV header has no columns");

  std::map<Assignment, std::uint64_t> counts;
  std::vector<int> max_value(header.size(), 1);
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto cells = split(line);
    if (cells.size() != header.size()) {
      throw ParseError("line " + std::to_string(line_no) + ": expected " +
                       std::to_string(header.size()) + " cells, got " +
                       std::to_string(cells.size()));
    }
    Assignment row(cells.size());
    for (std::size_t k = 0; k < cells.size(); ++k) {
      const auto& c = cells[k];
      int value = 0;
      const auto [ptr, ec] = std::from_chars(c.data(), c.data() + c.size(), value);
      if (ec != std::errc{} || ptr != c.data() + c.size() || value < 0) {
        throw ParseError("line " + std::to_string(line_no) + ", column '" + header[k] +
                         "': expected a non-negative integer, got '" + c + "'");
      }
      row[k] = value;
      max_value[k] = std::max(max_value[k], value);
    }
    ++counts[row];
  }
  if (counts.empty()) throw ParseError("CSV has no records");

  std::vector<VariableSpec> vars;
  for (std::size_t k = 0; k < header.size(); ++k) vars.push_back({header[k], max_value[k] + 1});
  try {
    return Dataset(std::move(vars), std::move(counts));
  } catch (const InputError& e) {
    throw ParseError(e.what());
  }
}

Dataset read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return read_csv(in);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void write_csv(std::ostream& out, std::span<const VariableSpec> vars,
               std::span<const Assignment> rows) {
  for (std::size_t k = 0; k < vars.size(); ++k) out << (k ? "," : "") << vars[k].name;
  out << '\n';
  for (const auto& row : rows) {
    for (std::size_t k = 0; k < row.size(); ++k) out << (k ? "," : "") << row[k];
    out << '\n';
  }
}

}  // namespace polytree::io
