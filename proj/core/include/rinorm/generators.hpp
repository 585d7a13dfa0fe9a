// Copyright The rinorm Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace rinorm {

/// Backing implementation of a concave generator.
///
/// Implementations work in log coordinates so that arguments such as
/// u^64 with u = 2^-100000 stay representable. Arguments above 1 are
/// treated as 1 (the generator is extended by its constant value ψ(1)).
class GeneratorModel {
 public:
  virtual ~GeneratorModel() = default;
  /// ψ(t) for t in (0, 1].
  virtual double value(double t) const = 0;
  /// log ψ(exp(log_t)) for log_t <= 0.
  virtual long double log_value(long double log_t) const = 0;
  /// Elasticity t ψ'(t) / ψ(t) at t = exp(log_t).
  virtual long double elasticity(long double log_t) const = 0;
};

/// An increasing concave function on [0, 1] with ψ(0) = 0.
///
/// Immutable and cheap to copy; safe to share between threads.
class ConcaveGenerator {
 public:
  ConcaveGenerator(std::string label, std::shared_ptr<const GeneratorModel> model);

  double operator()(double t) const;
  long double log_value(long double log_t) const;
  long double elasticity(long double log_t) const;
  /// ψ'(t) for t in (0, 1].
  double derivative(double t) const;
  const std::string& label() const { return label_; }

 private:
  std::string label_;
  std::shared_ptr<const GeneratorModel> model_;
};

namespace generators {

/// t^alpha, 0 < alpha <= 1.
ConcaveGenerator power(double alpha);

/// t log^{1/p}(e/t), p >= 1; the fundamental function of exp(L_p).
ConcaveGenerator logpow(double p);

/// log^{-1/2}(1/t) on (0, e^{-3/2}], continued linearly to 1 with the
/// left derivative at e^{-3/2} as slope.
ConcaveGenerator example7();

/// ψ(t) = ∫_0^t G(z) dz = exp(-G(t)^2) / sqrt(pi), where G is the inverse
/// of erfc. The rearrangement of a centred Gaussian with variance 1/2 is G.
ConcaveGenerator gauss();

/// Piecewise-linear interpolant through (0, 0) and the given (t, ψ(t))
/// points. The last point must be at t = 1. Rejects data that are not
/// strictly increasing and concave.
ConcaveGenerator table(std::vector<std::pair<double, double>> points,
                       std::string label = "table");

/// Reads "t,psi" rows (optional header line) and builds a table generator.
ConcaveGenerator table_from_csv(const std::string& path);

/// "power:0.5", "logpow:2", "example7", "gauss", "table:<path.csv>".
ConcaveGenerator parse(std::string_view dsl);

}  // namespace generators

/// G(t) = erfc^{-1}(t) on (0, 1].
double gauss_quantile(double t);

/// Grid checks of the defining properties of a concave generator on
/// u = 2^-j, j = 0..max_depth.
struct GeneratorCheck {
  bool vanishes_at_zero = true;
  bool increasing = true;
  bool concave = true;
  bool sublinear = true;
  std::string detail;

  bool ok() const { return vanishes_at_zero && increasing && concave && sublinear; }
};

GeneratorCheck check_generator(const ConcaveGenerator& psi, int max_depth = 60,
                               double tolerance = 1e-12);

}  // namespace rinorm
