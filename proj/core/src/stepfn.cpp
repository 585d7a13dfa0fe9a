// Copyright The rinorm Authors.
// SPDX-License-Identifier: Apache-2.0

#include "rinorm/stepfn.hpp"

#include <functional>

namespace rinorm {

StepFunction to_double(const ExactStepFunction& f) {
  std::vector<double> bp;
  std::vector<double> v;
  for (const auto& b : f.breakpoints()) bp.push_back(rinorm::to_double(b));
  for (const auto& x : f.values()) v.push_back(rinorm::to_double(x));
  bp.front() = 0.0;
  bp.back() = 1.0;
  return {std::move(bp), std::move(v)};
}

StepFunction quantile_from_samples(std::span<const double> samples, std::size_t m) {
  if (samples.empty()) throw InvalidArgument("quantile_from_samples: empty sample");
  if (m == 0) throw InvalidArgument("quantile_from_samples: piece count must be positive");
  std::vector<double> a(samples.size());
  std::transform(samples.begin(), samples.end(), a.begin(), [](double x) { return std::abs(x); });
  std::sort(a.begin(), a.end(), std::greater<>());

  const std::size_t n = a.size();
  std::vector<double> bp(m + 1);
  std::vector<double> v(m);
  for (std::size_t i = 0; i <= m; ++i) bp[i] = static_cast<double>(i) / static_cast<double>(m);
  for (std::size_t i = 0; i < m; ++i) {
    // floor(i * n / m) without overflow for the sizes used here
    const auto idx = static_cast<std::size_t>((static_cast<unsigned __int128>(i) * n) / m);
    v[i] = a[idx];
  }
  return {std::move(bp), std::move(v)};
}

DecreasingProfile DecreasingProfile::from_step_function(const StepFunction& f) {
  const StepFunction r = rearrange(f);
  DecreasingProfile p;
  for (std::size_t i = 0; i < r.pieces(); ++i) {
    if (r.values()[i] <= 0.0) break;
    p.values.push_back(r.values()[i]);
    p.log_cumulative.push_back(std::log(r.breakpoints()[i + 1]));
  }
  return p;
}

DecreasingProfile DecreasingProfile::from_atoms(std::span<const double> values,
                                                std::span<const double> log_masses) {
  if (values.size() != log_masses.size())
    throw InvalidArgument("from_atoms: values and masses differ in length");
  std::vector<std::pair<double, double>> atoms;
  atoms.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double v = std::abs(values[i]);
    if (!std::isfinite(v)) throw InvalidArgument("from_atoms: non-finite atom value");
    if (v > 0.0 && log_masses[i] > kNegInf) atoms.emplace_back(v, log_masses[i]);
  }
  std::sort(atoms.begin(), atoms.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });

  DecreasingProfile p;
  double cum = kNegInf;
  for (const auto& [v, lm] : atoms) {
    cum = log_add_exp(cum, lm);
    if (!p.values.empty() && p.values.back() == v) {
      p.log_cumulative.back() = cum;
    } else {
      p.values.push_back(v);
      p.log_cumulative.push_back(cum);
    }
  }
  for (auto& c : p.log_cumulative) c = std::min(c, 0.0);
  return p;
}

}  // namespace rinorm
