#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "polytree/error.hpp"
#include "polytree/estimate.hpp"
#include "polytree/generate.hpp"
#include "polytree/info.hpp"

using namespace polytree;
namespace fx = polytree::fixtures;

namespace {

RecoveredStructure recover(const DistributionSource& src) {
  return recover_directions(src, mwst(compute_weights(src)), IndependenceOracle::default_for(src),
                            false);
}

DirectedStructure structure_of(const Polytree& m) { return {m.size(), m.edges(), {}}; }

double max_joint_gap(const Polytree& a, const Polytree& b) {
  double gap = 0;
  Assignment x(a.size(), 0);
  do {
    gap = std::max(gap, std::abs(joint_probability(a, x) - joint_probability(b, x)));
  } while (next_assignment(x, a.variables()));
  return gap;
}

double log_likelihood(const Polytree& m, const Dataset& d) {
  double ll = 0;
  for (const auto& [row, count] : d.counts()) {
    ll += static_cast<double>(count) * std::log(joint_probability(m, row));
  }
  return ll;
}

}  // namespace

TEST_CASE("complete_orientation defaults") {
  const auto chain = DistributionSource::factored(fx::noisy_chain());
  const auto rs = recover(chain);
  const auto d = complete_orientation(rs, {}, chain, IndependenceOracle::exact());
  CHECK(d.edges == std::vector<DirectedEdge>{{0, 1}, {1, 2}});

  // Rooted at the lowest index even when it is in the middle of the chain.
  const std::vector<VariableSpec> vars = fx::binary({"M", "L", "R"});
  const auto mid = DistributionSource::factored(
      Polytree(vars, {{1}, {}, {0}}, {{.8, .2, .3, .7}, {.4, .6}, {.9, .1, .15, .85}}));
  const auto d2 = complete_orientation(recover(mid), {}, mid, IndependenceOracle::exact());
  CHECK(d2.edges == std::vector<DirectedEdge>{{0, 1}, {0, 2}});

  const auto orsrc = DistributionSource::factored(fx::or_gate());
  const auto d3 = complete_orientation(recover(orsrc), {}, orsrc, IndependenceOracle::exact());
  CHECK(d3.edges == std::vector<DirectedEdge>{{0, 1}, {2, 1}});
}

TEST_CASE("complete_orientation applies overrides") {
  const auto chain = DistributionSource::factored(fx::noisy_chain());
  const auto rs = recover(chain);
  OrientationOverride ov{{{2, 1}}};
  const auto d = complete_orientation(rs, ov, chain, IndependenceOracle::exact());
  // C -> B given; remaining fragment {A, B} is rooted at B, which has a parent.
  CHECK(d.edges == std::vector<DirectedEdge>{{1, 0}, {2, 1}});
  CHECK(d.warnings.empty());
}

TEST_CASE("complete_orientation rejects contradicting overrides") {
  const auto chain = DistributionSource::factored(fx::noisy_chain());
  const auto rs = recover(chain);
  const auto exact = IndependenceOracle::exact();
  OrientationOverride collider{{{0, 1}, {2, 1}}};
  CHECK_THROWS_AS(complete_orientation(rs, collider, chain, exact), InputError);

  const auto orsrc = DistributionSource::factored(fx::or_gate());
  OrientationOverride flip{{{1, 0}}};
  CHECK_THROWS_AS(complete_orientation(recover(orsrc), flip, orsrc, exact), InputError);

  OrientationOverride not_edge{{{0, 2}}};
  CHECK_THROWS_AS(complete_orientation(rs, not_edge, chain, exact), InputError);

  OrientationOverride twice{{{0, 1}, {1, 0}}};
  CHECK_THROWS_AS(complete_orientation(rs, twice, chain, exact), InputError);
}

TEST_CASE("fit_parameters reproduces the generating CPTs") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    RandomPolytreeOptions opt;
    opt.n_vars = 3 + seed % 6;
    opt.max_card = 3;
    opt.max_parents = 3;
    opt.seed = 40 + seed;
    const auto m = random_polytree(opt);
    const auto fit = fit_parameters(DistributionSource::factored(m), structure_of(m));
    CHECK(fit.warnings.empty());
    for (std::size_t i = 0; i < m.size(); ++i) {
      REQUIRE(fit.model.cpt(i).size() == m.cpt(i).size());
      for (std::size_t k = 0; k < m.cpt(i).size(); ++k) {
        CHECK(std::abs(fit.model.cpt(i)[k] - m.cpt(i)[k]) < 1e-9);
      }
    }
  }
}

TEST_CASE("reversing a chain keeps the joint") {
  const auto m = fx::noisy_chain();
  const auto src = DistributionSource::factored(m);
  const auto forward = fit_parameters(src, {3, {{0, 1}, {1, 2}}, {}});
  const auto backward = fit_parameters(src, {3, {{1, 0}, {2, 1}}, {}});
  CHECK(max_joint_gap(forward.model, m) < 1e-9);
  CHECK(max_joint_gap(backward.model, m) < 1e-9);
}

TEST_CASE("smoothing and empty parent configurations") {
  // B is only ever seen with A = 0.
  std::map<Assignment, std::uint64_t> counts{{{0, 0}, 6}, {{0, 1}, 2}};
  const auto src = DistributionSource::empirical(Dataset(fx::binary({"A", "B"}), counts));
  const DirectedStructure ab{2, {{0, 1}}, {}};

  const auto raw = fit_parameters(src, ab, 0.0);
  CHECK(raw.model.cpt(1)[0] == doctest::Approx(0.75));
  CHECK(raw.model.cpt(1)[2] == 0.5);  // unseen A = 1 -> uniform
  CHECK(raw.warnings.size() == 1);

  const auto smoothed = fit_parameters(src, ab, 1.0);
  CHECK(smoothed.model.cpt(1)[0] == doctest::Approx(7.0 / 10.0));
  CHECK(smoothed.model.cpt(1)[2] == 0.5);
  CHECK(smoothed.model.cpt(0)[1] == doctest::Approx(1.0 / 10.0));

  const auto tiny = fit_parameters(src, ab, 1e-12);
  CHECK(tiny.model.cpt(1)[0] == doctest::Approx(0.75));

  CHECK_THROWS_AS(fit_parameters(src, ab, -1.0), InputError);
}

TEST_CASE("empirical fit is a maximum-likelihood estimate") {
  const auto m = fx::merged_basin();
  const auto data = sample(m, 5000, 9);
  const auto src = DistributionSource::empirical(data);
  const auto fit = fit_parameters(src, structure_of(m));
  const double best = log_likelihood(fit.model, data);

  std::mt19937_64 rng(1);
  std::normal_distribution<double> noise(0.0, 0.05);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::vector<double>> cpts;
    for (std::size_t i = 0; i < m.size(); ++i) {
      auto cpt = fit.model.cpt(i);
      const auto card = static_cast<std::size_t>(m.cardinality(i));
      for (std::size_t col = 0; col < cpt.size() / card; ++col) {
        double s = 0;
        for (std::size_t x = 0; x < card; ++x) {
          auto& p = cpt[col * card + x];
          p = std::clamp(p + noise(rng), 1e-3, 1.0);
          s += p;
        }
        for (std::size_t x = 0; x < card; ++x) cpt[col * card + x] /= s;
      }
      cpts.push_back(cpt);
    }
    std::vector<std::vector<std::size_t>> parents;
    for (std::size_t i = 0; i < m.size(); ++i) parents.push_back(fit.model.parents(i));
    const Polytree perturbed(m.variables(), parents, cpts);
    CHECK(log_likelihood(perturbed, data) <= best);
  }
}
