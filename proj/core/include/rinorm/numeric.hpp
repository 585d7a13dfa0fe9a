// Copyright The rinorm Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace rinorm {

inline constexpr double kLn2 = 0.693147180559945309417232121458176568;
inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// Error carrying a short machine-readable reason code next to the message.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

/// Thrown for arguments outside an operation's domain.
class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what) : Error("invalid_argument", what) {}
};

/// Thrown when an iterative solver fails to bracket or converge.
class NumericalFailure : public Error {
 public:
  explicit NumericalFailure(const std::string& what) : Error("numerical_failure", what) {}
};

/// Neumaier's variant of Kahan summation.
template <class T = double>
class CompensatedSum {
 public:
  CompensatedSum& operator+=(T x) {
    T t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
    return *this;
  }
  T value() const { return sum_ + comp_; }

 private:
  T sum_{0};
  T comp_{0};
};

/// log(exp(a) + exp(b)) without overflow; -inf is the additive identity.
template <class T>
inline T log_add_exp(T a, T b) {
  if (a < b) std::swap(a, b);
  if (b == -std::numeric_limits<T>::infinity()) return a;
  return a + std::log1p(std::exp(b - a));
}

template <class T>
inline T log_sum_exp(std::span<const T> xs) {
  T top = -std::numeric_limits<T>::infinity();
  for (T x : xs) top = std::max(top, x);
  if (top == -std::numeric_limits<T>::infinity()) return top;
  CompensatedSum<T> acc;
  for (T x : xs) acc += std::exp(x - top);
  return top + std::log(acc.value());
}

/// log(1 - exp(x)) for x < 0.
template <class T>
inline T log1mexp(T x) {
  return x > T(-0.693147180559945309417232121458176568L) ? std::log(-std::expm1(x))
                                                         : std::log1p(-std::exp(x));
}

/// log C(n, k), exact to rounding for n <= 64 and via lgamma beyond.
double log_binomial(std::int64_t n, std::int64_t k);

/// C(n, k) as a double; exact integer arithmetic for n <= 64.
double binomial(std::int64_t n, std::int64_t k);

/// Parses a whole token as a double; `context` names the field in errors.
double parse_double(std::string_view token, std::string_view context);

/// Shortest round-trippable decimal form.
std::string format_double(double x);

struct GoldenResult {
  double x;
  double value;
};

/// Golden-section maximisation of a unimodal function on [a, b].
template <class F>
GoldenResult golden_section_max(F&& f, double a, double b, double rel_tol = 1e-12,
                                int max_iter = 200) {
  constexpr double kInvPhi = 0.6180339887498948482;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  for (int it = 0; it < max_iter; ++it) {
    if (std::abs(b - a) <= rel_tol * (std::abs(x1) + std::abs(x2)) + 1e-300) break;
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
    }
  }
  return f1 >= f2 ? GoldenResult{x1, f1} : GoldenResult{x2, f2};
}

}  // namespace rinorm
