#include "polytree/info.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "polytree/error.hpp"

namespace polytree {

namespace {

constexpr double kMassTolerance = 1e-9;

void check_table(const std::vector<double>& p, std::size_t expected, const char* what) {
  if (p.size() != expected) {
    throw InputError(std::string(what) + " has " + std::to_string(p.size()) +
                     " entries, expected " + std::to_string(expected));
  }
  double sum = 0.0;
  for (double x : p) {
    if (!(x >= 0.0)) throw InputError(std::string(what) + " has a negative or NaN entry");
    sum += x;
  }
  if (std::abs(sum - 1.0) > kMassTolerance) {
    throw InputError(std::string(what) + " sums to " + std::to_string(sum));
  }
}

// p * log2(p / q) with the 0 log 0 = 0 convention.
double plogq(double p, double q) { return p > 0.0 ? p * std::log2(p / q) : 0.0; }

double clamp_rounding(double bits) { return bits < 0.0 ? 0.0 : bits; }

}  // namespace

PairTable::PairTable(int rows, int cols, std::vector<double> probabilities)
    : rows_(rows), cols_(cols), p_(std::move(probabilities)) {
  if (rows < 1 || cols < 1) throw InputError("pair table needs positive dimensions");
  check_table(p_, static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), "pair table");
}

PairTable PairTable::transposed() const {
  std::vector<double> t(p_.size());
  for (int a = 0; a < rows_; ++a) {
    for (int b = 0; b < cols_; ++b) t[static_cast<std::size_t>(b * rows_ + a)] = at(a, b);
  }
  return PairTable(cols_, rows_, std::move(t));
}

TripleTable::TripleTable(int ci, int cj, int ck, std::vector<double> probabilities)
    : ci_(ci), cj_(cj), ck_(ck), p_(std::move(probabilities)) {
  if (ci < 1 || cj < 1 || ck < 1) throw InputError("triple table needs positive dimensions");
  check_table(p_,
              static_cast<std::size_t>(ci) * static_cast<std::size_t>(cj) *
                  static_cast<std::size_t>(ck),
              "triple table");
}

PairTable pair_marginal(const DistributionSource& src, std::size_t i, std::size_t j) {
  if (i == j) throw InputError("pair marginal needs two distinct variables");
  const std::array<std::size_t, 2> vars{i, j};
  auto p = marginal(src, vars);
  return PairTable(src.variables()[i].cardinality, src.variables()[j].cardinality, std::move(p));
}

TripleTable triple_marginal(const DistributionSource& src, std::size_t i, std::size_t j,
                            std::size_t k) {
  if (i == j || i == k || j == k) throw InputError("triple marginal needs three distinct variables");
  const std::array<std::size_t, 3> vars{i, j, k};
  auto p = marginal(src, vars);
  const auto& v = src.variables();
  return TripleTable(v[i].cardinality, v[j].cardinality, v[k].cardinality, std::move(p));
}

double mutual_information(const PairTable& t) {
  std::vector<double> row(static_cast<std::size_t>(t.rows()), 0.0);
  std::vector<double> col(static_cast<std::size_t>(t.cols()), 0.0);
  for (int a = 0; a < t.rows(); ++a) {
    for (int b = 0; b < t.cols(); ++b) {
      row[static_cast<std::size_t>(a)] += t.at(a, b);
      col[static_cast<std::size_t>(b)] += t.at(a, b);
    }
  }
  // Terms are summed in sorted order so the result does not depend on which
  // variable is the row variable.
  std::vector<double> terms;
  terms.reserve(t.probabilities().size());
  for (int a = 0; a < t.rows(); ++a) {
    for (int b = 0; b < t.cols(); ++b) {
      terms.push_back(
          plogq(t.at(a, b), row[static_cast<std::size_t>(a)] * col[static_cast<std::size_t>(b)]));
    }
  }
  std::sort(terms.begin(), terms.end());
  double bits = 0.0;
  for (double term : terms) bits += term;
  return clamp_rounding(bits);
}

double conditional_mutual_information(const TripleTable& t) {
  const auto ci = static_cast<std::size_t>(t.card_i());
  const auto cj = static_cast<std::size_t>(t.card_j());
  const auto ck = static_cast<std::size_t>(t.card_k());
  std::vector<double> pk(ck, 0.0);
  std::vector<double> pik(ci * ck, 0.0);
  std::vector<double> pjk(cj * ck, 0.0);
  for (std::size_t a = 0; a < ci; ++a) {
    for (std::size_t b = 0; b < cj; ++b) {
      for (std::size_t c = 0; c < ck; ++c) {
        const double p = t.at(static_cast<int>(a), static_cast<int>(b), static_cast<int>(c));
        pk[c] += p;
        pik[a * ck + c] += p;
        pjk[b * ck + c] += p;
      }
    }
  }
  // P(a,b,c) log [P(a,b,c) P(c) / (P(a,c) P(b,c))]
  double bits = 0.0;
  for (std::size_t a = 0; a < ci; ++a) {
    for (std::size_t b = 0; b < cj; ++b) {
      for (std::size_t c = 0; c < ck; ++c) {
        const double p = t.at(static_cast<int>(a), static_cast<int>(b), static_cast<int>(c));
        if (p > 0.0) bits += p * std::log2(p * pk[c] / (pik[a * ck + c] * pjk[b * ck + c]));
      }
    }
  }
  return clamp_rounding(bits);
}

std::optional<double> closeness(const DistributionSource& p, const Polytree& model) {
  if (!p.is_exact()) throw InputError("closeness needs an exact distribution");
  if (p.variables() != model.variables()) {
    throw InputError("closeness: distribution and model are over different variables");
  }
  const auto joint = p.joint_table();
  Assignment a(p.size(), 0);
  std::size_t idx = 0;
  double bits = 0.0;
  do {
    const double px = joint[idx++];
    if (px > 0.0) {
      const double qx = joint_probability(model, a);
      if (qx <= 0.0) return std::nullopt;
      bits += px * std::log2(px / qx);
    }
  } while (next_assignment(a, p.variables()));
  return clamp_rounding(bits);
}

}  // namespace polytree
