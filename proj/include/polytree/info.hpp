#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "polytree/model.hpp"

namespace polytree {

// Joint distribution of two variables, row-major (second index fastest).
class PairTable {
 public:
  // Throws InputError on a size mismatch, a negative entry or a total mass
  // further than 1e-9 from 1.
  PairTable(int rows, int cols, std::vector<double> probabilities);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double at(int a, int b) const { return p_[static_cast<std::size_t>(a * cols_ + b)]; }
  const std::vector<double>& probabilities() const { return p_; }
  PairTable transposed() const;

 private:
  int rows_;
  int cols_;
  std::vector<double> p_;
};

// Joint distribution of three variables, row-major (third index fastest).
// Conditional quantities condition on the third index.
class TripleTable {
 public:
  TripleTable(int ci, int cj, int ck, std::vector<double> probabilities);

  int card_i() const { return ci_; }
  int card_j() const { return cj_; }
  int card_k() const { return ck_; }
  double at(int a, int b, int c) const {
    return p_[static_cast<std::size_t>((a * cj_ + b) * ck_ + c)];
  }
  const std::vector<double>& probabilities() const { return p_; }

 private:
  int ci_;
  int cj_;
  int ck_;
  std::vector<double> p_;
};

// Throws InputError when i == j.
PairTable pair_marginal(const DistributionSource& src, std::size_t i, std::size_t j);
// Throws InputError on a repeated index.
TripleTable triple_marginal(const DistributionSource& src, std::size_t i, std::size_t j,
                            std::size_t k);

// I(x_i; x_j) in bits. Rounding residues below zero are clamped to 0.
double mutual_information(const PairTable& t);

// I(x_i; x_j | x_k) in bits. Zero-mass conditioning slices contribute 0.
double conditional_mutual_information(const TripleTable& t);

// Sum over X of P(X) log2(P(X) / P_a(X)) where P_a is the joint of `model`.
// Returns nullopt ("unrepresentable") when P puts mass where P_a is zero.
// `p` must be exact and defined over the same variables as `model`.
std::optional<double> closeness(const DistributionSource& p, const Polytree& model);

}  // namespace polytree
