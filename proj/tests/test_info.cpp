#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "polytree/error.hpp"
#include "polytree/generate.hpp"
#include "polytree/info.hpp"

using namespace polytree;
namespace fx = polytree::fixtures;

TEST_CASE("mutual_information examples") {
  CHECK(mutual_information(PairTable(2, 2, {.25, .25, .25, .25})) == 0.0);
  CHECK(mutual_information(PairTable(2, 2, {.5, 0, 0, .5})) == doctest::Approx(1.0).epsilon(1e-15));
  // High-precision reference: 0.27807190511263765...
  CHECK(mutual_information(PairTable(2, 2, {.4, .1, .1, .4})) ==
        doctest::Approx(0.27807190511263765).epsilon(1e-12));
  CHECK(std::abs(mutual_information(PairTable(2, 2, {.4, .1, .1, .4})) - 0.2780) < 1e-3);
}

TEST_CASE("malformed tables are rejected") {
  CHECK_THROWS_AS(PairTable(2, 2, {.25, .25, .25}), InputError);
  CHECK_THROWS_AS(PairTable(2, 2, {.5, .5, .5, .5}), InputError);
  CHECK_THROWS_AS(PairTable(2, 2, {-.25, .75, .25, .25}), InputError);
  CHECK_THROWS_AS(TripleTable(2, 2, 2, std::vector<double>(8, 0.1)), InputError);
}

TEST_CASE("conditional_mutual_information examples") {
  CHECK(conditional_mutual_information(TripleTable(2, 2, 2, std::vector<double>(8, 0.125))) == 0.0);

  // (A, C | B) for the XOR gate: variables A=0, B=1, C=2.
  const auto xsrc = DistributionSource::factored(fx::xor_gate());
  CHECK(conditional_mutual_information(triple_marginal(xsrc, 0, 2, 1)) ==
        doctest::Approx(1.0).epsilon(1e-12));

  const auto chain = DistributionSource::factored(fx::noisy_chain());
  CHECK(conditional_mutual_information(triple_marginal(chain, 0, 2, 1)) < 1e-12);

  // OR gate collider: I(A;C|B) = 0.18872187554086714 (high-precision reference).
  const auto orsrc = DistributionSource::factored(fx::or_gate());
  CHECK(conditional_mutual_information(triple_marginal(orsrc, 0, 2, 1)) ==
        doctest::Approx(0.18872187554086714).epsilon(1e-12));
}

TEST_CASE("zero-mass conditioning slices contribute nothing") {
  // k = 1 carries no mass.
  const TripleTable t(2, 2, 2, {.5, 0, 0, 0, 0, 0, .5, 0});
  CHECK(conditional_mutual_information(t) == doctest::Approx(1.0));
}

TEST_CASE("mutual information is symmetric and non-negative") {
  std::mt19937_64 rng(7);
  std::gamma_distribution<double> g(0.6, 1.0);
  std::uniform_int_distribution<int> card(2, 4);
  for (int trial = 0; trial < 500; ++trial) {
    const int r = card(rng);
    const int c = card(rng);
    std::vector<double> p(static_cast<std::size_t>(r * c));
    double s = 0;
    for (auto& x : p) s += (x = g(rng));
    for (auto& x : p) x /= s;
    const PairTable t(r, c, p);
    const double mi = mutual_information(t);
    CHECK(mi >= 0.0);
    CHECK(mi == mutual_information(t.transposed()));
    CHECK(std::abs(mi - fx::brute_mi(p, r, c)) < 1e-12);

    const int k = card(rng);
    std::vector<double> q(static_cast<std::size_t>(r * c * k));
    s = 0;
    for (auto& x : q) s += (x = g(rng));
    for (auto& x : q) x /= s;
    CHECK(conditional_mutual_information(TripleTable(r, c, k, q)) >= 0.0);
  }
}

TEST_CASE("information identities on random Markov chains") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    std::vector<VariableSpec> vars{{"A", 2 + static_cast<int>(seed % 2)},
                                   {"B", 2 + static_cast<int>(seed / 2 % 2)},
                                   {"C", 2 + static_cast<int>(seed / 4 % 2)}};
    const auto m = random_parameters(vars, {{}, {0}, {1}}, seed);
    const auto src = DistributionSource::factored(m);
    const double ab = mutual_information(pair_marginal(src, 0, 1));
    const double bc = mutual_information(pair_marginal(src, 1, 2));
    const double ac = mutual_information(pair_marginal(src, 0, 2));
    const double ab_c = conditional_mutual_information(triple_marginal(src, 0, 1, 2));
    const double cb_a = conditional_mutual_information(triple_marginal(src, 2, 1, 0));
    CHECK(std::abs(ab - ac - ab_c) <= 1e-9);
    CHECK(std::abs(bc - ac - cb_a) <= 1e-9);
  }
}

TEST_CASE("closeness") {
  const auto m = fx::merged_basin();
  const auto src = DistributionSource::factored(m);
  const auto self = closeness(src, m);
  REQUIRE(self.has_value());
  CHECK(*self < 1e-12);

  // Independent coins are positive everywhere, so approximating the copy pair
  // by them costs 1 bit; the reverse puts P mass where P_a = 0.
  const auto copy = DistributionSource::factored(fx::copy_pair());
  const auto coins_model = fx::independent_pair();
  REQUIRE(closeness(copy, coins_model).has_value());
  CHECK(*closeness(copy, coins_model) == doctest::Approx(1.0));
  const auto coins = DistributionSource::factored(coins_model);
  CHECK_FALSE(closeness(coins, fx::copy_pair()).has_value());

  CHECK_THROWS_AS(closeness(src, fx::or_gate()), InputError);
}
