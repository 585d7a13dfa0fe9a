// Copyright The rinorm Authors.
// SPDX-License-Identifier: Apache-2.0

#include "rinorm/limits.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "rinorm/numeric.hpp"

namespace rinorm {

namespace {

constexpr long double kLn2L = 0.693147180559945309417232121458176568L;

LimitEstimate tail_window_max(const LimitGrid& grid,
                              const std::function<double(long double)>& ratio_at_log_u) {
  const auto depths = grid.depths();
  std::vector<double> r;
  r.reserve(depths.size());
  for (double x : depths) r.push_back(ratio_at_log_u(-static_cast<long double>(x) * kLn2L));

  const auto w = static_cast<std::size_t>(grid.window);
  LimitEstimate est;
  est.window = grid.window;
  est.log2_grid_min = -depths.back();
  est.value = *std::max_element(r.end() - static_cast<std::ptrdiff_t>(w), r.end());
  est.previous = *std::max_element(r.end() - static_cast<std::ptrdiff_t>(2 * w),
                                   r.end() - static_cast<std::ptrdiff_t>(w));
  est.converged = std::isfinite(est.value) &&
                  std::abs(est.value - est.previous) <= grid.tolerance * std::max(1.0, std::abs(est.value));
  return est;
}

}  // namespace

std::vector<double> LimitGrid::depths() const {
  if (!(min_depth > 0.0) || !(max_depth > min_depth) || points_per_octave < 1 || window < 1)
    throw InvalidArgument("invalid limit grid");
  const double octaves = std::log2(max_depth / min_depth);
  const auto count = static_cast<int>(std::ceil(octaves * points_per_octave)) + 1;
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i)
    out.push_back(std::min(max_depth, min_depth * std::exp2(static_cast<double>(i) / points_per_octave)));
  if (out.size() < static_cast<std::size_t>(2 * window))
    throw InvalidArgument("limit grid has fewer than two windows of probes");
  return out;
}

LimitEstimate limsup_ratio_k(const ConcaveGenerator& psi, int k, const LimitGrid& grid) {
  if (k < 2) throw InvalidArgument("limsup_ratio_k needs k >= 2");
  const long double log_k = std::log(static_cast<long double>(k));
  return tail_window_max(grid, [&](long double log_u) {
    return static_cast<double>(std::exp(psi.log_value(log_u + log_k) - psi.log_value(log_u)));
  });
}

LimitEstimate limsup_ratio_l(const ConcaveGenerator& psi, int l, const LimitGrid& grid) {
  if (l < 2) throw InvalidArgument("limsup_ratio_l needs l >= 2");
  return tail_window_max(grid, [&](long double log_u) {
    return static_cast<double>(std::exp(psi.log_value(l * log_u) - psi.log_value(log_u)));
  });
}

LimitEstimate limsup_general(const ConcaveGenerator& psi, int n, const LimitGrid& grid) {
  if (n < 1) throw InvalidArgument("limsup_general needs n >= 1");
  std::vector<long double> log_coeff(static_cast<std::size_t>(n) + 1);
  for (int s = 1; s <= n; ++s)
    log_coeff[static_cast<std::size_t>(s)] = (1 - s) * kLn2L + log_binomial(n, s);
  return tail_window_max(grid, [&](long double log_u) {
    const long double base = psi.log_value(log_u);
    CompensatedSum<long double> sum;
    for (int s = 1; s <= n; ++s)
      sum += std::exp(psi.log_value(log_coeff[static_cast<std::size_t>(s)] + s * log_u) - base);
    return static_cast<double>(sum.value());
  });
}

double power_ratio_bound(double c, int m, int l) {
  if (!(c > 0.0 && c < 1.0)) throw InvalidArgument("power_ratio_bound needs 0 < c < 1");
  if (l < 2 || m < l) throw InvalidArgument("power_ratio_bound needs m >= l >= 2");
  return std::pow(c, std::log(static_cast<double>(m)) / std::log(static_cast<double>(l)) - 1.0);
}

}  // namespace rinorm
