#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "fixtures.hpp"
#include "polytree/io.hpp"

using namespace polytree;
namespace fx = polytree::fixtures;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
};

Run cli(const std::string& args) {
  const std::string cmd = std::string(POLYTREE_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string tmp(const std::string& name) {
  fs::create_directories(POLYTREE_TEST_TMP);
  return (fs::path(POLYTREE_TEST_TMP) / name).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string model_file(const std::string& name, const Polytree& m) {
  const auto path = tmp(name);
  io::write_model(path, m);
  return path;
}

}  // namespace

TEST_CASE("sample is deterministic per seed") {
  const auto model = model_file("merged.json", fx::merged_basin());
  const auto a = cli("sample --model " + model + " -n 200 --seed 4");
  const auto b = cli("sample --model " + model + " -n 200 --seed 4");
  const auto c = cli("sample --model " + model + " -n 200 --seed 5");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out != c.out);
  CHECK(a.out.rfind("A,B,C,D,E\n", 0) == 0);
  CHECK(cli("sample --model " + model + " -n 0").code == 1);
}

TEST_CASE("mi prints bits") {
  const auto xor_model = model_file("xor.json", fx::xor_gate());
  const auto plain = cli("mi --model " + xor_model + " A B");
  CHECK(plain.code == 0);
  CHECK(plain.out == "0.000000\n");
  CHECK(cli("mi --model " + xor_model + " A C --given B").out == "1.000000\n");
  CHECK(cli("mi --model " + xor_model + " A A").code == 1);
  CHECK(cli("mi --model " + xor_model + " A Q").code == 2);
}

TEST_CASE("learn writes a result and DOT") {
  const auto model = model_file("or.json", fx::or_gate());
  const auto out = tmp("or_result.json");
  const auto dot = tmp("or.dot");
  const auto r = cli("learn --model " + model + " -o " + out + " --dot " + dot);
  CHECK(r.code == 0);
  const auto doc = nlohmann::json::parse(slurp(out));
  CHECK(doc["edges"].size() == 2);
  CHECK(doc["edges"][0]["state"] == "directed");
  CHECK(slurp(dot).find("cluster_0") != std::string::npos);

  const auto again = cli("dot --result " + out);
  CHECK(again.code == 0);
  CHECK(again.out == slurp(dot));

  const auto eval = cli("eval --result " + out + " --truth " + model);
  CHECK(eval.code == 0);
  const auto rep = nlohmann::json::parse(eval.out);
  CHECK(rep["skeleton_f1"] == 1.0);
  CHECK(rep["orientation_accuracy"] == 1.0);
}

TEST_CASE("learn from samples with fitting") {
  const auto model = model_file("chain.json", fx::noisy_chain());
  const auto data = tmp("chain.csv");
  REQUIRE(cli("sample --model " + model + " -n 5000 --seed 1 -o " + data).code == 0);
  const auto r = cli("learn --data " + data + " --fit --orient 'C->B'");
  CHECK(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  REQUIRE(doc.contains("model"));
  CHECK(doc["model"]["parents"]["B"] == nlohmann::json::array({"C"}));
  CHECK(cli("learn --data " + data + " --orient 'C->B'").code == 1);
  CHECK(cli("learn --data " + data + " --fit --orient 'A->C'").code == 2);
}

TEST_CASE("exit codes for bad input") {
  CHECK(cli("").code == 1);
  CHECK(cli("learn --oracle bogus --model x").code == 1);
  const auto bad = tmp("bad.json");
  io::write_text_file(bad, "{not json");
  CHECK(cli("learn --model " + bad).code == 1);
  const auto coin = model_file("coin.json", fx::fair_coin());
  CHECK(cli("learn --model " + coin).code == 1);
  const auto model = model_file("or2.json", fx::or_gate());
  CHECK(cli("learn --model " + model + " --oracle gtest").code == 1);
  CHECK(cli("learn --model " + model + " --jpdf " + model).code == 1);
}
