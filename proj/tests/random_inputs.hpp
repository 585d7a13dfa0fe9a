// Copyright The rinorm Authors.
// SPDX-License-Identifier: Apache-2.0

// Seeded generators of random inputs for property tests.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "rinorm/generators.hpp"
#include "rinorm/rational.hpp"
#include "rinorm/stepfn.hpp"

namespace rinorm::testing {

class RandomInputs {
 public:
  explicit RandomInputs(std::uint64_t seed) : engine_(seed) {}

  double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(engine_); }
  int integer(int a, int b) { return std::uniform_int_distribution<int>(a, b)(engine_); }
  bool coin() { return integer(0, 1) == 1; }

  /// u = 2^-x with x uniform on [0, max_depth].
  double measure(double max_depth = 30.0) { return std::exp2(-uniform(0.0, max_depth)); }

  /// Step function with up to max_pieces pieces; a third of the values are
  /// repeated or zero so canonicalization gets exercised.
  StepFunction step_function(int max_pieces = 12) {
    const int m = integer(1, max_pieces);
    std::vector<double> cuts;
    for (int i = 0; i + 1 < m; ++i) cuts.push_back(uniform(0.0, 1.0));
    std::sort(cuts.begin(), cuts.end());
    std::vector<double> bp{0.0};
    for (double c : cuts)
      if (c > bp.back() + 1e-9 && c < 1.0 - 1e-9) bp.push_back(c);
    bp.push_back(1.0);
    std::vector<double> v;
    for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
      const int roll = integer(0, 5);
      if (roll == 0) v.push_back(0.0);
      else if (roll == 1 && !v.empty()) v.push_back(v.back());
      else v.push_back(uniform(0.0, 10.0));
    }
    return {std::move(bp), std::move(v)};
  }

  /// Same on a dyadic grid of 2^-6 with small integer values, so sums and
  /// pointwise comparisons are exact in floating point.
  StepFunction dyadic_step_function() {
    std::vector<double> bp{0.0};
    std::vector<double> v;
    int at = 0;
    while (at < 64) {
      at = std::min(64, at + integer(1, 16));
      bp.push_back(at / 64.0);
      v.push_back(integer(0, 8));
    }
    return {std::move(bp), std::move(v)};
  }

  ExactStepFunction exact_step_function(int max_pieces = 10) {
    const int denominator = integer(2, 97);
    std::vector<int> cuts;
    for (int i = 0; i < integer(0, max_pieces - 1); ++i) cuts.push_back(integer(1, denominator - 1));
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    std::vector<Rational> bp{Rational(0)};
    for (int c : cuts) bp.emplace_back(c, denominator);
    bp.emplace_back(1);
    std::vector<Rational> v;
    for (std::size_t i = 0; i + 1 < bp.size(); ++i) v.emplace_back(integer(0, 20), integer(1, 7));
    return {std::move(bp), std::move(v)};
  }

  /// One of the built-in families with random parameters, or a random
  /// concave table.
  ConcaveGenerator generator() {
    switch (integer(0, 5)) {
      case 0: return generators::power(uniform(0.05, 1.0));
      case 1: return generators::logpow(uniform(1.0, 8.0));
      case 2: return generators::example7();
      case 3: return generators::gauss();
      case 4: return generators::power(1.0);
      default: return table();
    }
  }

  /// Piecewise-linear concave generator with decreasing slopes.
  ConcaveGenerator table() {
    const int m = integer(2, 8);
    std::vector<double> t;
    for (int i = 0; i + 1 < m; ++i) t.push_back(uniform(0.01, 0.99));
    std::sort(t.begin(), t.end());
    t.erase(std::unique(t.begin(), t.end(), [](double a, double b) { return b - a < 1e-3; }), t.end());
    t.push_back(1.0);
    std::vector<double> slopes;
    for (std::size_t i = 0; i < t.size(); ++i) slopes.push_back(uniform(0.1, 3.0));
    std::sort(slopes.rbegin(), slopes.rend());
    std::vector<std::pair<double, double>> points;
    double prev_t = 0.0;
    double value = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
      value += slopes[i] * (t[i] - prev_t);
      points.emplace_back(t[i], value);
      prev_t = t[i];
    }
    return generators::table(std::move(points));
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace rinorm::testing
