#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "polytree/model.hpp"

namespace polytree::io {

// Model file:
//   {"variables": [{"name": "A", "cardinality": 2}, ...],
//    "parents":   {"B": ["A", "C"], ...},
//    "cpts":      {"A": [...], "B": [...], ...}}
// CPTs are flattened row-major over the listed parents, child value fastest.
Polytree model_from_json(const nlohmann::json& j);
nlohmann::json model_to_json(const Polytree& model);
Polytree read_model(const std::string& path);
void write_model(const std::string& path, const Polytree& model);

// Explicit joint table file:
//   {"variables": [...], "probabilities": [...]}
// Row-major over the variables, last variable fastest. At most 2^20 cells.
constexpr std::size_t kMaxExplicitCells = std::size_t{1} << 20;
DistributionSource jpdf_from_json(const nlohmann::json& j);
DistributionSource read_jpdf(const std::string& path);

// Dataset CSV: header of variable names, one record per line, integer cells.
// Cardinalities are inferred as max value + 1 (at least 2).
Dataset read_csv(std::istream& in);
Dataset read_csv(const std::string& path);
void write_csv(std::ostream& out, std::span<const VariableSpec> vars,
               std::span<const Assignment> rows);

nlohmann::json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace polytree::io
