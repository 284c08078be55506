#include <doctest.h>

#include <sstream>

#include "fixtures.hpp"
#include "polytree/error.hpp"
#include "polytree/generate.hpp"
#include "polytree/io.hpp"

using namespace polytree;
namespace fx = polytree::fixtures;
using nlohmann::json;

TEST_CASE("model JSON layout") {
  const auto j = io::model_to_json(fx::or_gate());
  CHECK(j["variables"][1]["name"] == "B");
  CHECK(j["parents"]["B"] == json::array({"A", "C"}));
  // Parent configs (A, C) row-major, child value fastest.
  CHECK(j["cpts"]["B"] == json::array({1.0, 0.0, 0.0, 1.0, 0.0, 1.0, 0.0, 1.0}));
}

TEST_CASE("model JSON round trip") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    RandomPolytreeOptions opt;
    opt.n_vars = 2 + seed;
    opt.max_card = 3;
    opt.seed = seed;
    const auto m = random_polytree(opt);
    const auto back = io::model_from_json(json::parse(io::model_to_json(m).dump()));
    CHECK(back.variables() == m.variables());
    CHECK(back.edges() == m.edges());
    for (std::size_t i = 0; i < m.size(); ++i) CHECK(back.cpt(i) == m.cpt(i));
  }
}

TEST_CASE("model JSON diagnostics") {
  auto j = io::model_to_json(fx::or_gate());
  j["cpts"].erase("C");
  try {
    io::model_from_json(j);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("'C'") != std::string::npos);
  }

  auto k = io::model_to_json(fx::or_gate());
  k["parents"]["B"] = json::array({"A", "Q"});
  CHECK_THROWS_AS(io::model_from_json(k), ParseError);

  auto l = io::model_to_json(fx::or_gate());
  l["variables"][0].erase("cardinality");
  CHECK_THROWS_AS(io::model_from_json(l), ParseError);

  auto bad_sum = io::model_to_json(fx::or_gate());
  bad_sum["cpts"]["A"] = json::array({0.5, 0.6});
  CHECK_THROWS_AS(io::model_from_json(bad_sum), ParseError);
}

TEST_CASE("explicit JPDF") {
  const json j = {{"variables", {{{"name", "A"}, {"cardinality", 2}}, {{"name", "B"}, {"cardinality", 2}}}},
                  {"probabilities", {0.5, 0.0, 0.0, 0.5}}};
  const auto src = io::jpdf_from_json(j);
  CHECK(src.kind() == DistributionSource::Kind::Explicit);
  CHECK(src.joint_table()[3] == 0.5);

  json too_big = {{"variables", json::array()}, {"probabilities", json::array()}};
  for (int i = 0; i < 21; ++i) {
    too_big["variables"].push_back({{"name", "V" + std::to_string(i)}, {"cardinality", 2}});
  }
  CHECK_THROWS_AS(io::jpdf_from_json(too_big), ParseError);

  json short_table = j;
  short_table["probabilities"] = {1.0};
  CHECK_THROWS_AS(io::jpdf_from_json(short_table), ParseError);
}

TEST_CASE("CSV reading") {
  std::istringstream in("A,B\n0,1\n1,1\n0,1\n\n2,0\n");
  const auto d = io::read_csv(in);
  CHECK(d.total() == 4);
  CHECK(d.variables()[0] == VariableSpec{"A", 3});
  CHECK(d.variables()[1] == VariableSpec{"B", 2});
  CHECK(d.counts().at({0, 1}) == 2);

  std::istringstream ragged("A,B\n0\n");
  CHECK_THROWS_AS(io::read_csv(ragged), ParseError);
  std::istringstream text("A,B\n0,x\n");
  CHECK_THROWS_AS(io::read_csv(text), ParseError);
  std::istringstream negative("A,B\n0,-1\n");
  CHECK_THROWS_AS(io::read_csv(negative), ParseError);
  std::istringstream header_only("A,B\n");
  CHECK_THROWS_AS(io::read_csv(header_only), ParseError);
}

TEST_CASE("CSV writing preserves row order") {
  const auto rows = sample_rows(fx::merged_basin(), 50, 3);
  std::ostringstream out;
  io::write_csv(out, fx::merged_basin().variables(), rows);
  std::istringstream in(out.str());
  const auto d = io::read_csv(in);
  CHECK(d.total() == 50);
  CHECK(out.str().rfind("A,B,C,D,E\n", 0) == 0);
}
