// Copyright The rinorm Authors.
// SPDX-License-Identifier: Apache-2.0

#include "rinorm/special.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "rinorm/numeric.hpp"

namespace rinorm::special {

namespace {

constexpr long double kSqrtPi = 1.772453850905516027298167483341145183L;
constexpr long double kLogSqrtPi = 0.572364942924700087071713675676529356L;

// Beyond this point erfcl is close to the bottom of the long double range.
constexpr long double kAsymptoticFrom = 100.0L;

long double log_erfc_asymptotic(long double x) {
  // erfc(x) = exp(-x^2) / (x sqrt(pi)) * sum_k (-1)^k (2k-1)!! / (2x^2)^k
  const long double inv = 1.0L / (2.0L * x * x);
  long double term = 1.0L;
  long double series = 1.0L;
  for (int k = 1; k < 12; ++k) {
    term *= -(2.0L * k - 1.0L) * inv;
    series += term;
  }
  return -x * x - std::log(x) - kLogSqrtPi + std::log(series);
}

// Starting point for the Newton iteration.
long double initial_guess(long double log_z) {
  if (log_z > -1.0L) {
    // z close to 1: invert erf(x) = 1 - z from its Maclaurin series.
    const long double y = -std::expm1(log_z);
    const long double c = kSqrtPi / 2.0L;
    return c * (y + std::numbers::pi_v<long double> * y * y * y / 12.0L);
  }
  // Fixed point of x^2 = -log z - log(x sqrt(pi)).
  long double x = std::sqrt(-log_z);
  for (int i = 0; i < 4; ++i) {
    const long double r = -log_z - std::log(x * kSqrtPi);
    x = std::sqrt(r > 0.0L ? r : -log_z);
  }
  return x;
}

}  // namespace

long double log_erfc(long double x) {
  if (x < kAsymptoticFrom) return std::log(std::erfc(x));
  return log_erfc_asymptotic(x);
}

long double erfc_inv_log(long double log_z) {
  if (std::isnan(log_z) || log_z > 0.0L)
    throw InvalidArgument("erfc_inv: argument outside (0, 1]");
  if (log_z == 0.0L) return 0.0L;
  if (log_z == -std::numeric_limits<long double>::infinity())
    return std::numeric_limits<long double>::infinity();

  long double x = initial_guess(log_z);
  for (int it = 0; it < 100; ++it) {
    const long double le = log_erfc(x);
    const long double h = le - log_z;
    // d/dx log erfc(x) = -(2/sqrt(pi)) exp(-x^2) / erfc(x)
    const long double slope = -2.0L / kSqrtPi * std::exp(-x * x - le);
    long double next = x - h / slope;
    if (next < 0.0L) next = 0.5L * x;
    const long double step = std::abs(next - x);
    x = next;
    if (step <= 4.0L * std::numeric_limits<long double>::epsilon() * std::max(x, 1.0L)) break;
  }
  return x;
}

long double erfc_inv(long double z) {
  if (!(z > 0.0L) || z > 1.0L) throw InvalidArgument("erfc_inv: argument outside (0, 1]");
  return erfc_inv_log(std::log(z));
}

}  // namespace rinorm::special
