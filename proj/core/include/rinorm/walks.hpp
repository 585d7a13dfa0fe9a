// Copyright The rinorm Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "rinorm/numeric.hpp"
#include "rinorm/rational.hpp"

namespace rinorm {

/// Law of an integer-valued random variable with finite support.
template <class P>
struct IntegerDistribution {
  std::map<std::int64_t, P> atoms;

  P mass() const {
    P total(0);
    for (const auto& [x, p] : atoms) total += p;
    return total;
  }

  P probability(std::int64_t x) const {
    const auto it = atoms.find(x);
    return it == atoms.end() ? P(0) : it->second;
  }

  /// P(|X| >= s).
  P abs_tail(std::int64_t s) const {
    P total(0);
    for (const auto& [x, p] : atoms)
      if (x >= s || -x >= s) total += p;
    return total;
  }

  friend bool operator==(const IntegerDistribution&, const IntegerDistribution&) = default;
};

using ExactDistribution = IntegerDistribution<Rational>;
using FloatDistribution = IntegerDistribution<double>;

/// E|X|.
template <class P>
P expectation_abs(const IntegerDistribution<P>& d) {
  P total(0);
  for (const auto& [x, p] : d.atoms) total += P(x < 0 ? -x : x) * p;
  return total;
}

/// Law of W_k = r_1 + ... + r_k for independent symmetric signs.
ExactDistribution walk_distribution(int k);
FloatDistribution walk_distribution_float(int k);

/// P(|W_k| >= s).
Rational walk_abs_tail(int k, int s);
double walk_abs_tail_float(int k, int s);

/// P(|A_n χ_(0,u]| >= s) = Σ_{k=s}^n C(n,k) u^k (1-u)^{n-k} P(|W_k| >= s).
Rational an_indicator_tail(int n, const Rational& u, int s);
double an_indicator_tail(int n, double u, int s);

/// Law of |A_n χ_(0,u]| on {0, ..., n}.
ExactDistribution an_indicator_abs_law(int n, const Rational& u);

/// Leading small-u term 2^{1-s} C(n,s) u^s of the tail above.
double an_tail_asymptotic(int n, double u, int s);

/// log P(|W_k| >= s) for all 1 <= s <= k <= n, and the indicator tails
/// built from them in log space. Building costs O(n^2), each query O(n^2).
class IndicatorTailTable {
 public:
  explicit IndicatorTailTable(int n);

  int n() const { return n_; }
  double log_walk_tail(int k, int s) const;

  /// log P(|A_n χ_(0,u]| >= s) for s = 1..n at u = exp(log_u);
  /// entry s - 1 holds tail s.
  std::vector<long double> log_tails(long double log_u) const;

 private:
  int n_;
  std::vector<double> log_walk_;  // row k, column s, both 1-based
  std::vector<double> log_choose_;
};

}  // namespace rinorm
