#pragma once

// Small hand-built models shared by the test binaries.

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "polytree/model.hpp"

namespace polytree::fixtures {

inline std::vector<VariableSpec> binary(std::initializer_list<const char*> names) {
  std::vector<VariableSpec> v;
  for (const char* n : names) v.push_back({n, 2});
  return v;
}

inline Polytree fair_coin() { return Polytree(binary({"A"}), {{}}, {{0.5, 0.5}}); }

// A -> B with both variables fair and independent (B ignores A).
inline Polytree independent_pair() {
  return Polytree(binary({"A", "B"}), {{}, {0}}, {{0.5, 0.5}, {0.5, 0.5, 0.5, 0.5}});
}

// A -> B with B = A.
inline Polytree copy_pair() {
  return Polytree(binary({"A", "B"}), {{}, {0}}, {{0.5, 0.5}, {1, 0, 0, 1}});
}

// A -> B <- C with A, C fair and B = A or C.
inline Polytree or_gate() {
  // Parent configs (A, C) = 00, 01, 10, 11.
  return Polytree(binary({"A", "B", "C"}), {{}, {0, 2}, {}},
                  {{0.5, 0.5}, {1, 0, 0, 1, 0, 1, 0, 1}, {0.5, 0.5}});
}

// A -> B <- C with A, C fair and B = A xor C.
inline Polytree xor_gate() {
  return Polytree(binary({"A", "B", "C"}), {{}, {0, 2}, {}},
                  {{0.5, 0.5}, {1, 0, 0, 1, 0, 1, 1, 0}, {0.5, 0.5}});
}

// X -> Y -> Z with X fair and Y = X, Z = Y.
inline Polytree identical_chain() {
  return Polytree(binary({"X", "Y", "Z"}), {{}, {0}, {1}},
                  {{0.5, 0.5}, {1, 0, 0, 1}, {1, 0, 0, 1}});
}

// Noisy chain A -> B -> C.
inline Polytree noisy_chain() {
  return Polytree(binary({"A", "B", "C"}), {{}, {0}, {1}},
                  {{0.3, 0.7}, {0.9, 0.1, 0.2, 0.8}, {0.85, 0.15, 0.25, 0.75}});
}

// OR gate extended with a noisy child D of B.
inline Polytree or_gate_with_child() {
  return Polytree(binary({"A", "B", "C", "D"}), {{}, {0, 2}, {}, {1}},
                  {{0.5, 0.5}, {1, 0, 0, 1, 0, 1, 0, 1}, {0.5, 0.5}, {0.9, 0.1, 0.2, 0.8}});
}

// A -> B <- C, B -> D <- E: D's second parent E is met while sweeping B's
// basin.
inline Polytree merged_basin() {
  return Polytree(binary({"A", "B", "C", "D", "E"}), {{}, {0, 2}, {}, {1, 4}, {}},
                  {{0.4, 0.6},
                   {0.9, 0.1, 0.3, 0.7, 0.25, 0.75, 0.05, 0.95},
                   {0.55, 0.45},
                   {0.8, 0.2, 0.35, 0.65, 0.4, 0.6, 0.1, 0.9},
                   {0.3, 0.7}});
}

// Noisy three-parent collider P0, P1, P2 -> Y.
inline Polytree three_parents() {
  std::vector<double> y;
  for (int config = 0; config < 8; ++config) {
    const int ones = (config & 1) + ((config >> 1) & 1) + ((config >> 2) & 1);
    const double p1 = 0.1 + 0.27 * ones;
    y.push_back(1.0 - p1);
    y.push_back(p1);
  }
  return Polytree(binary({"P0", "P1", "P2", "Y"}), {{}, {}, {}, {0, 1, 2}},
                  {{0.5, 0.5}, {0.4, 0.6}, {0.7, 0.3}, y});
}

// Brute-force marginal over `vars` by summing joint_probability over every
// assignment. Independent of DistributionSource.
inline std::vector<double> brute_marginal(const Polytree& m, const std::vector<std::size_t>& vars) {
  std::size_t cells = 1;
  for (std::size_t v : vars) cells *= static_cast<std::size_t>(m.cardinality(v));
  std::vector<double> out(cells, 0.0);
  Assignment a(m.size(), 0);
  do {
    std::size_t cell = 0;
    for (std::size_t v : vars) cell = cell * static_cast<std::size_t>(m.cardinality(v)) + a[v];
    out[cell] += joint_probability(m, a);
  } while (next_assignment(a, m.variables()));
  return out;
}

// Plain-formula mutual information in bits from a row-major c1 x c2 table.
inline double brute_mi(const std::vector<double>& p, int c1, int c2) {
  double bits = 0.0;
  for (int a = 0; a < c1; ++a) {
    for (int b = 0; b < c2; ++b) {
      double pa = 0.0;
      double pb = 0.0;
      for (int x = 0; x < c2; ++x) pa += p[a * c2 + x];
      for (int x = 0; x < c1; ++x) pb += p[x * c2 + b];
      const double pab = p[a * c2 + b];
      if (pab > 0) bits += pab * std::log2(pab / (pa * pb));
    }
  }
  return bits;
}

}  // namespace polytree::fixtures
