// Copyright The rinorm Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "rinorm/numeric.hpp"
#include "rinorm/rational.hpp"

namespace rinorm {

namespace detail {

template <class Scalar>
bool same_value(const Scalar& a, const Scalar& b) {
  if constexpr (std::is_floating_point_v<Scalar>) {
    return std::abs(a - b) <= 1e-15 * std::max(std::abs(a), std::abs(b));
  } else {
    return a == b;
  }
}

template <class Scalar>
bool is_finite(const Scalar& x) {
  if constexpr (std::is_floating_point_v<Scalar>)
    return std::isfinite(x);
  else
    return true;
}

}  // namespace detail

/// A nonnegative finitely-valued function on [0, 1].
///
/// The function equals values()[i] on the half-open interval
/// (breakpoints()[i], breakpoints()[i + 1]]. Breakpoints start at 0, end at
/// exactly 1 and strictly increase. Adjacent pieces never share a value: the
/// constructor merges them, so two step functions are equal as functions iff
/// their representations are equal.
template <class Scalar>
class BasicStepFunction {
 public:
  using scalar_type = Scalar;

  BasicStepFunction() : breakpoints_{Scalar(0), Scalar(1)}, values_{Scalar(0)} {}

  BasicStepFunction(std::vector<Scalar> breakpoints, std::vector<Scalar> values) {
    if (values.empty() || breakpoints.size() != values.size() + 1)
      throw InvalidArgument("step function needs one more breakpoint than values");
    if (breakpoints.front() != Scalar(0) || breakpoints.back() != Scalar(1))
      throw InvalidArgument("step function breakpoints must start at 0 and end at 1");
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (!(breakpoints[i] < breakpoints[i + 1]))
        throw InvalidArgument("step function breakpoints must be strictly increasing");
      if (!detail::is_finite(values[i]) || values[i] < Scalar(0))
        throw InvalidArgument("step function values must be finite and nonnegative");
    }
    breakpoints_.push_back(breakpoints.front());
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (!values_.empty() && detail::same_value(values_.back(), values[i])) {
        breakpoints_.back() = breakpoints[i + 1];
      } else {
        values_.push_back(values[i]);
        breakpoints_.push_back(breakpoints[i + 1]);
      }
    }
  }

  static BasicStepFunction constant(Scalar v) { return {{Scalar(0), Scalar(1)}, {v}}; }

  /// Indicator of (a, b] scaled by `height`.
  static BasicStepFunction indicator(Scalar a, Scalar b, Scalar height = Scalar(1)) {
    if (!(Scalar(0) <= a && a < b && b <= Scalar(1)))
      throw InvalidArgument("indicator interval must satisfy 0 <= a < b <= 1");
    std::vector<Scalar> bp{Scalar(0)};
    std::vector<Scalar> v;
    if (a > Scalar(0)) {
      bp.push_back(a);
      v.push_back(Scalar(0));
    }
    bp.push_back(b);
    v.push_back(height);
    if (b < Scalar(1)) {
      bp.push_back(Scalar(1));
      v.push_back(Scalar(0));
    }
    return {std::move(bp), std::move(v)};
  }

  std::span<const Scalar> breakpoints() const { return breakpoints_; }
  std::span<const Scalar> values() const { return values_; }
  std::size_t pieces() const { return values_.size(); }
  Scalar length(std::size_t i) const { return breakpoints_[i + 1] - breakpoints_[i]; }

  /// Value at t in (0, 1]; pieces are left-open, right-closed.
  Scalar operator()(const Scalar& t) const {
    auto it = std::lower_bound(breakpoints_.begin() + 1, breakpoints_.end(), t);
    if (it == breakpoints_.end()) --it;
    return values_[static_cast<std::size_t>(it - breakpoints_.begin()) - 1];
  }

  /// Lebesgue measure of {f > level}.
  Scalar measure_above(const Scalar& level) const {
    Scalar m(0);
    for (std::size_t i = 0; i < values_.size(); ++i)
      if (values_[i] > level) m += length(i);
    return m;
  }

  Scalar sup() const { return *std::max_element(values_.begin(), values_.end()); }

  bool is_non_increasing() const {
    return std::is_sorted(values_.rbegin(), values_.rend());
  }

  BasicStepFunction scaled(const Scalar& c) const {
    if (c < Scalar(0)) throw InvalidArgument("step function scale must be nonnegative");
    std::vector<Scalar> v(values_);
    for (auto& x : v) x *= c;
    return {breakpoints_, std::move(v)};
  }

  friend bool operator==(const BasicStepFunction&, const BasicStepFunction&) = default;

 private:
  std::vector<Scalar> breakpoints_;
  std::vector<Scalar> values_;
};

using StepFunction = BasicStepFunction<double>;
using ExactStepFunction = BasicStepFunction<Rational>;

/// Pointwise sum on the common refinement of both partitions.
template <class Scalar>
BasicStepFunction<Scalar> operator+(const BasicStepFunction<Scalar>& f,
                                    const BasicStepFunction<Scalar>& g) {
  auto fb = f.breakpoints();
  auto gb = g.breakpoints();
  std::vector<Scalar> bp{Scalar(0)};
  std::vector<Scalar> v;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < f.pieces() && j < g.pieces()) {
    const Scalar right = std::min(fb[i + 1], gb[j + 1]);
    v.push_back(f.values()[i] + g.values()[j]);
    bp.push_back(right);
    if (fb[i + 1] == right) ++i;
    if (gb[j + 1] == right) ++j;
  }
  bp.back() = Scalar(1);
  return {std::move(bp), std::move(v)};
}

/// Decreasing rearrangement f*: the right-continuous non-increasing function
/// equimeasurable with f.
template <class Scalar>
BasicStepFunction<Scalar> rearrange(const BasicStepFunction<Scalar>& f) {
  std::vector<std::pair<Scalar, Scalar>> layers;  // (value, length)
  layers.reserve(f.pieces());
  for (std::size_t i = 0; i < f.pieces(); ++i) layers.emplace_back(f.values()[i], f.length(i));
  std::stable_sort(layers.begin(), layers.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });

  std::vector<Scalar> bp{Scalar(0)};
  std::vector<Scalar> v;
  Scalar acc(0);
  for (std::size_t i = 0; i < layers.size(); ++i) {
    acc += layers[i].second;
    const bool last = i + 1 == layers.size();
    const Scalar right = last ? Scalar(1) : acc;
    // Float rounding can swallow a tiny piece; fold it into its neighbour.
    if (!last && !(right > bp.back())) continue;
    if (!last && !(right < Scalar(1))) continue;
    bp.push_back(right);
    v.push_back(layers[i].first);
  }
  return {std::move(bp), std::move(v)};
}

/// Dilation: t -> f(t / tau) on (0, min(1, tau)], zero beyond.
template <class Scalar>
BasicStepFunction<Scalar> dilate(const BasicStepFunction<Scalar>& f, const Scalar& tau) {
  if (!(tau > Scalar(0))) throw InvalidArgument("dilation factor must be positive");
  std::vector<Scalar> bp{Scalar(0)};
  std::vector<Scalar> v;
  for (std::size_t i = 0; i < f.pieces(); ++i) {
    Scalar right = f.breakpoints()[i + 1] * tau;
    if (right > Scalar(1) || i + 1 == f.pieces()) right = std::min(right, Scalar(1));
    if (!(right > bp.back())) continue;
    bp.push_back(right);
    v.push_back(f.values()[i]);
    if (right == Scalar(1)) break;
  }
  if (bp.back() < Scalar(1) && !(tau < Scalar(1))) {
    bp.back() = Scalar(1);
  } else if (bp.back() < Scalar(1)) {
    bp.push_back(Scalar(1));
    v.push_back(Scalar(0));
  }
  return {std::move(bp), std::move(v)};
}

/// Converts an exact step function to floating point.
StepFunction to_double(const ExactStepFunction& f);

/// Empirical decreasing rearrangement of |samples| on m equal-width pieces.
///
/// Piece i, i.e. (i/m, (i+1)/m], carries the upper empirical quantile of
/// |samples| at its left endpoint: with a_0 >= a_1 >= ... the sorted
/// absolute samples, the value is a_floor(i N / m). When N divides m this is
/// the exact rearrangement of the empirical law.
StepFunction quantile_from_samples(std::span<const double> samples, std::size_t m);

/// Layered form of a decreasing rearrangement with measures kept in log
/// space, so atoms of probability 2^-16000 remain representable.
///
/// values[i] are strictly decreasing and positive; exp(log_cumulative[i])
/// is the measure of {f* >= values[i]}, i.e. the right end of the i-th
/// layer. The function vanishes beyond exp(log_cumulative.back()).
struct DecreasingProfile {
  std::vector<double> values;
  std::vector<double> log_cumulative;

  static DecreasingProfile from_step_function(const StepFunction& f);

  /// Law with atoms at |values[i]| carrying mass exp(log_masses[i]).
  /// Equal absolute values are merged; zero values and zero masses dropped.
  static DecreasingProfile from_atoms(std::span<const double> values,
                                      std::span<const double> log_masses);

  std::size_t layers() const { return values.size(); }
  bool empty() const { return values.empty(); }
};

}  // namespace rinorm
