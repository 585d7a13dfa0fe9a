// Copyright The rinorm Authors.
// SPDX-License-Identifier: Apache-2.0

#include "rinorm/walks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rinorm {

namespace {

constexpr long double kLn2L = 0.693147180559945309417232121458176568L;
constexpr long double kNegInfL = -std::numeric_limits<long double>::infinity();

void check_nonnegative(int k, const char* what) {
  if (k < 0) throw InvalidArgument(std::string(what) + " must be >= 0");
}

void check_tail_args(int n, int s) {
  if (n < 1) throw InvalidArgument("indicator tail needs n >= 1");
  if (s < 1 || s > n) throw InvalidArgument("indicator tail needs 1 <= s <= n");
}

// log Σ_{j=0}^{J} C(k, j) for J = 0..k.
std::vector<double> log_binomial_prefix(int k) {
  std::vector<double> out(static_cast<std::size_t>(k) + 1);
  double acc = kNegInf;
  for (int j = 0; j <= k; ++j) {
    acc = log_add_exp(acc, log_binomial(k, j));
    out[static_cast<std::size_t>(j)] = acc;
  }
  return out;
}

double log_walk_tail_direct(int k, int s) {
  if (k < s) return kNegInf;
  const auto prefix = log_binomial_prefix(k);
  return (1 - k) * kLn2 + prefix[static_cast<std::size_t>((k - s) / 2)];
}

}  // namespace

ExactDistribution walk_distribution(int k) {
  check_nonnegative(k, "walk length");
  ExactDistribution d;
  const Rational scale = pow2(-k);
  for (int j = 0; j <= k; ++j) d.atoms[k - 2 * j] = Rational(binomial_exact(k, j)) * scale;
  return d;
}

FloatDistribution walk_distribution_float(int k) {
  check_nonnegative(k, "walk length");
  FloatDistribution d;
  for (int j = 0; j <= k; ++j) d.atoms[k - 2 * j] = std::exp(log_binomial(k, j) - k * kLn2);
  return d;
}

Rational walk_abs_tail(int k, int s) {
  check_nonnegative(k, "walk length");
  if (s < 1) throw InvalidArgument("walk tail level must be >= 1");
  if (k < s) return 0;
  BigInt count = 0;
  for (int j = 0; k - 2 * j >= s; ++j) count += binomial_exact(k, j);
  return Rational(2 * count) * pow2(-k);
}

double walk_abs_tail_float(int k, int s) {
  check_nonnegative(k, "walk length");
  if (s < 1) throw InvalidArgument("walk tail level must be >= 1");
  return std::exp(log_walk_tail_direct(k, s));
}

Rational an_indicator_tail(int n, const Rational& u, int s) {
  check_tail_args(n, s);
  if (!(u > 0 && u <= 1)) throw InvalidArgument("indicator measure must lie in (0, 1]");
  const Rational v = 1 - u;
  Rational total = 0;
  for (int k = s; k <= n; ++k)
    total += Rational(binomial_exact(n, k)) * pow(u, k) * pow(v, n - k) * walk_abs_tail(k, s);
  return total;
}

double an_indicator_tail(int n, double u, int s) {
  check_tail_args(n, s);
  if (!(u > 0.0 && u <= 1.0)) throw InvalidArgument("indicator measure must lie in (0, 1]");
  const long double log_u = std::log(static_cast<long double>(u));
  const long double log_v = u == 1.0 ? kNegInfL : std::log1p(-static_cast<long double>(u));
  std::vector<long double> terms;
  for (int k = s; k <= n; ++k) {
    const long double rest = n == k ? 0.0L : (n - k) * log_v;
    terms.push_back(log_binomial(n, k) + k * log_u + rest + log_walk_tail_direct(k, s));
  }
  return static_cast<double>(std::exp(log_sum_exp<long double>(terms)));
}

ExactDistribution an_indicator_abs_law(int n, const Rational& u) {
  if (n < 1) throw InvalidArgument("indicator law needs n >= 1");
  std::vector<Rational> tail(static_cast<std::size_t>(n) + 2, Rational(0));
  tail[0] = 1;
  for (int s = 1; s <= n; ++s) tail[static_cast<std::size_t>(s)] = an_indicator_tail(n, u, s);
  ExactDistribution d;
  for (int s = 0; s <= n; ++s) {
    const Rational p = tail[static_cast<std::size_t>(s)] - tail[static_cast<std::size_t>(s) + 1];
    if (p != 0) d.atoms[s] = p;
  }
  return d;
}

double an_tail_asymptotic(int n, double u, int s) {
  check_tail_args(n, s);
  if (!(u > 0.0 && u <= 1.0)) throw InvalidArgument("indicator measure must lie in (0, 1]");
  return std::exp((1 - s) * kLn2 + log_binomial(n, s) + s * std::log(u));
}

IndicatorTailTable::IndicatorTailTable(int n) : n_(n) {
  if (n < 1) throw InvalidArgument("tail table needs n >= 1");
  const auto w = static_cast<std::size_t>(n) + 1;
  log_walk_.assign(w * w, kNegInf);
  for (int k = 1; k <= n; ++k) {
    const auto prefix = log_binomial_prefix(k);
    for (int s = 1; s <= k; ++s)
      log_walk_[static_cast<std::size_t>(k) * w + static_cast<std::size_t>(s)] =
          (1 - k) * kLn2 + prefix[static_cast<std::size_t>((k - s) / 2)];
  }
  log_choose_.resize(w);
  for (int k = 0; k <= n; ++k) log_choose_[static_cast<std::size_t>(k)] = log_binomial(n, k);
}

double IndicatorTailTable::log_walk_tail(int k, int s) const {
  if (k < 0 || k > n_ || s < 1) throw InvalidArgument("tail table index out of range");
  if (s > k) return kNegInf;
  return log_walk_[static_cast<std::size_t>(k) * (static_cast<std::size_t>(n_) + 1) +
                   static_cast<std::size_t>(s)];
}

std::vector<long double> IndicatorTailTable::log_tails(long double log_u) const {
  if (!(log_u <= 0.0L)) throw InvalidArgument("indicator measure must lie in (0, 1]");
  const long double log_v = log_u == 0.0L ? kNegInfL : log1mexp(log_u);
  const auto w = static_cast<std::size_t>(n_) + 1;
  std::vector<long double> weight(w);
  for (int k = 0; k <= n_; ++k) {
    const long double rest = n_ == k ? 0.0L : (n_ - k) * log_v;
    weight[static_cast<std::size_t>(k)] = log_choose_[static_cast<std::size_t>(k)] + k * log_u + rest;
  }
  std::vector<long double> out(static_cast<std::size_t>(n_));
  for (int s = 1; s <= n_; ++s) {
    long double top = kNegInfL;
    for (int k = s; k <= n_; ++k)
      top = std::max(top, weight[static_cast<std::size_t>(k)] +
                              log_walk_[static_cast<std::size_t>(k) * w + static_cast<std::size_t>(s)]);
    CompensatedSum<long double> acc;
    if (top != kNegInfL)
      for (int k = s; k <= n_; ++k)
        acc += std::exp(weight[static_cast<std::size_t>(k)] +
                        log_walk_[static_cast<std::size_t>(k) * w + static_cast<std::size_t>(s)] - top);
    out[static_cast<std::size_t>(s) - 1] = top == kNegInfL ? top : top + std::log(acc.value());
  }
  return out;
}

}  // namespace rinorm
