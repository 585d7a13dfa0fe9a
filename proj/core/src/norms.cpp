// Copyright The rinorm Authors.
// SPDX-License-Identifier: Apache-2.0

#include "rinorm/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "rinorm/limits.hpp"
#include "rinorm/numeric.hpp"

namespace rinorm {

namespace {

double generator_at_log(const ConcaveGenerator& psi, double log_t) {
  if (log_t > -700.0) return psi(std::exp(log_t));
  return static_cast<double>(std::exp(psi.log_value(log_t)));
}

double log_generator_at_log(const ConcaveGenerator& psi, double log_t) {
  if (log_t > -700.0) return std::log(psi(std::exp(log_t)));
  return static_cast<double>(psi.log_value(log_t));
}

// log of the length of the i-th layer of a profile.
double log_layer_length(const DecreasingProfile& f, std::size_t i) {
  const double right = f.log_cumulative[i];
  if (i == 0) return right;
  return right + log1mexp<double>(f.log_cumulative[i - 1] - right);
}

std::string_view next_field(std::string_view& rest) {
  const auto colon = rest.find(':');
  const std::string_view head = rest.substr(0, colon);
  rest = colon == std::string_view::npos ? std::string_view() : rest.substr(colon + 1);
  return head;
}

void check_lpq(double p, double q) {
  if (!(p > 1.0) || !std::isfinite(p)) throw InvalidArgument("lpq norm needs p > 1");
  if (!(q >= 1.0) || !std::isfinite(q)) throw InvalidArgument("lpq norm needs q >= 1");
}

}  // namespace

OrliczFunction OrliczFunction::exp_power(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) throw InvalidArgument("Orlicz N_p needs p >= 1");
  return {Kind::ExpPower, p};
}

OrliczFunction OrliczFunction::power(double r) {
  if (!(r >= 1.0) || !std::isfinite(r)) throw InvalidArgument("Orlicz power needs r >= 1");
  return {Kind::Power, r};
}

double OrliczFunction::operator()(double x) const {
  if (!(x > 0.0)) return 0.0;
  if (kind_ == Kind::Power) return std::pow(x, param_);
  return std::expm1(std::pow(x, param_));
}

double OrliczFunction::log_value(double x) const {
  if (!(x > 0.0)) return kNegInf;
  const double log_y = param_ * std::log(x);
  if (kind_ == Kind::Power) return log_y;
  if (log_y < -30.0) return log_y;
  const double y = std::exp(log_y);
  if (y > 50.0) return y + std::log1p(-std::exp(-y));
  return std::log(std::expm1(y));
}

double OrliczFunction::inverse_log(double log_y) const {
  if (kind_ == Kind::Power) return std::exp(log_y / param_);
  if (log_y < -30.0) return std::exp(log_y / param_);
  const double l = log_y > 30.0 ? log_y + std::log1p(std::exp(-log_y)) : std::log1p(std::exp(log_y));
  return std::pow(l, 1.0 / param_);
}

std::string OrliczFunction::label() const {
  return (kind_ == Kind::Power ? "pow:" : "Np:") + format_double(param_);
}

bool check_orlicz(const OrliczFunction& m) {
  if (m(0.0) != 0.0) return false;
  constexpr int kPoints = 256;
  std::vector<double> v(kPoints + 1);
  const double top = std::min(8.0, m.inverse_log(600.0));
  for (int i = 0; i <= kPoints; ++i) v[static_cast<std::size_t>(i)] = m(top * i / kPoints);
  for (int i = 1; i <= kPoints; ++i) {
    const auto k = static_cast<std::size_t>(i);
    if (!(v[k] > v[k - 1])) return false;
    if (i < kPoints && 2.0 * v[k] > (v[k - 1] + v[k + 1]) * (1.0 + 1e-12)) return false;
  }
  return true;
}

SpaceSpec parse_space(std::string_view dsl) {
  std::string_view rest = dsl;
  const std::string_view kind = next_field(rest);
  if (kind == "lorentz") return LorentzSpace{generators::parse(rest)};
  if (kind == "marcinkiewicz") return MarcinkiewiczSpace{generators::parse(rest)};
  if (kind == "orlicz") {
    const std::string_view family = next_field(rest);
    if (rest.empty()) throw InvalidArgument("orlicz space needs a parameter");
    const double a = parse_double(rest, "orlicz space");
    if (family == "Np") return OrliczSpace{OrliczFunction::exp_power(a)};
    if (family == "pow") return OrliczSpace{OrliczFunction::power(a)};
    throw InvalidArgument("unknown Orlicz family token '" + std::string(family) + "'");
  }
  if (kind == "lpq") {
    const double p = parse_double(next_field(rest), "lpq space");
    const double q = parse_double(rest, "lpq space");
    check_lpq(p, q);
    return LpqSpace{p, q};
  }
  throw InvalidArgument("unknown space token '" + std::string(kind) + "'");
}

std::string to_string(const SpaceSpec& space) {
  struct {
    std::string operator()(const LorentzSpace& s) const { return "lorentz:" + s.psi.label(); }
    std::string operator()(const MarcinkiewiczSpace& s) const {
      return "marcinkiewicz:" + s.phi.label();
    }
    std::string operator()(const OrliczSpace& s) const { return "orlicz:" + s.m.label(); }
    std::string operator()(const LpqSpace& s) const {
      return "lpq:" + format_double(s.p) + ":" + format_double(s.q);
    }
  } visitor;
  return std::visit(visitor, space);
}

double lorentz_norm(const DecreasingProfile& f, const ConcaveGenerator& psi) {
  CompensatedSum<> sum;
  for (std::size_t i = 0; i < f.layers(); ++i) {
    const double step = f.values[i] - (i + 1 < f.layers() ? f.values[i + 1] : 0.0);
    sum += step * generator_at_log(psi, f.log_cumulative[i]);
  }
  return sum.value();
}

double lorentz_norm(const StepFunction& f, const ConcaveGenerator& psi) {
  return lorentz_norm(DecreasingProfile::from_step_function(f), psi);
}

double marcinkiewicz_norm(const DecreasingProfile& f, const ConcaveGenerator& phi) {
  double log_integral = kNegInf;
  double best = 0.0;
  for (std::size_t i = 0; i < f.layers(); ++i) {
    log_integral = log_add_exp(log_integral, std::log(f.values[i]) + log_layer_length(f, i));
    best = std::max(best, std::exp(log_integral - log_generator_at_log(phi, f.log_cumulative[i])));
  }
  return best;
}

double marcinkiewicz_norm(const StepFunction& f, const ConcaveGenerator& phi) {
  return marcinkiewicz_norm(DecreasingProfile::from_step_function(f), phi);
}

double orlicz_modular(const DecreasingProfile& f, const OrliczFunction& m, double lambda) {
  if (!(lambda > 0.0)) throw InvalidArgument("Orlicz modular needs lambda > 0");
  std::vector<double> terms(f.layers());
  for (std::size_t i = 0; i < f.layers(); ++i)
    terms[i] = log_layer_length(f, i) + m.log_value(f.values[i] / lambda);
  return std::exp(log_sum_exp<double>(terms));
}

double orlicz_norm(const DecreasingProfile& f, const OrliczFunction& m) {
  if (f.empty()) return 0.0;
  std::vector<double> log_len(f.layers());
  for (std::size_t i = 0; i < f.layers(); ++i) log_len[i] = log_layer_length(f, i);
  std::vector<double> terms(f.layers());
  auto log_modular = [&](double lambda) {
    for (std::size_t i = 0; i < f.layers(); ++i) terms[i] = log_len[i] + m.log_value(f.values[i] / lambda);
    return log_sum_exp<double>(terms);
  };

  double hi = f.values.front() / m.inverse_log(-f.log_cumulative.back());
  if (!(hi > 0.0) || !std::isfinite(hi)) throw NumericalFailure("Orlicz bracket is degenerate");
  while (log_modular(hi) > 0.0) hi *= 2.0;
  double lo = hi;
  for (int i = 0; log_modular(lo) <= 0.0; ++i) {
    if (i == 2000) throw NumericalFailure("Orlicz modular never exceeds 1: degenerate M");
    hi = lo;
    lo *= 0.5;
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) return hi;
    (log_modular(mid) > 0.0 ? lo : hi) = mid;
  }
  throw NumericalFailure("Orlicz bisection did not converge: degenerate M");
}

double orlicz_norm(const StepFunction& f, const OrliczFunction& m) {
  return orlicz_norm(DecreasingProfile::from_step_function(f), m);
}

double lpq_norm(const DecreasingProfile& f, double p, double q) {
  check_lpq(p, q);
  CompensatedSum<> sum;
  for (std::size_t i = 0; i < f.layers(); ++i) {
    const double next = i + 1 < f.layers() ? std::pow(f.values[i + 1], q) : 0.0;
    sum += (std::pow(f.values[i], q) - next) * std::exp(q / p * f.log_cumulative[i]);
  }
  return std::pow(sum.value(), 1.0 / q);
}

double lpq_norm(const StepFunction& f, double p, double q) {
  check_lpq(p, q);
  const StepFunction r = rearrange(f);
  if (r.values()[0] > 0.0 && (r.pieces() == 1 || (r.pieces() == 2 && r.values()[1] == 0.0)))
    return r.values()[0] * std::pow(r.breakpoints()[1], 1.0 / p);
  return lpq_norm(DecreasingProfile::from_step_function(r), p, q);
}

double norm(const DecreasingProfile& f, const SpaceSpec& space) {
  struct {
    const DecreasingProfile& f;
    double operator()(const LorentzSpace& s) const { return lorentz_norm(f, s.psi); }
    double operator()(const MarcinkiewiczSpace& s) const { return marcinkiewicz_norm(f, s.phi); }
    double operator()(const OrliczSpace& s) const { return orlicz_norm(f, s.m); }
    double operator()(const LpqSpace& s) const { return lpq_norm(f, s.p, s.q); }
  } visitor{f};
  return std::visit(visitor, space);
}

double norm(const StepFunction& f, const SpaceSpec& space) {
  if (const auto* s = std::get_if<LpqSpace>(&space)) return lpq_norm(f, s->p, s->q);
  return norm(DecreasingProfile::from_step_function(f), space);
}

double dilation_norm_lorentz(double tau, const ConcaveGenerator& psi) {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw InvalidArgument("dilation needs tau > 0");
  const long double log_tau = std::log(static_cast<long double>(tau));
  const long double log_psi_one = psi.log_value(0.0L);
  auto ratio = [&](double log_u) {
    const long double top = log_tau + log_u >= 0.0L ? log_psi_one : psi.log_value(log_tau + log_u);
    return static_cast<double>(std::exp(top - psi.log_value(log_u)));
  };

  std::vector<double> grid;
  for (int j = 0; j <= 512; ++j) grid.push_back(-j / 8.0 * kLn2);
  for (double x : LimitGrid{}.depths())
    if (x > 64.0) grid.push_back(-x * kLn2);
  if (log_tau > 0.0L) grid.push_back(-static_cast<double>(log_tau));
  std::sort(grid.begin(), grid.end());

  std::size_t arg = 0;
  double best = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double r = ratio(grid[i]);
    if (r > best) {
      best = r;
      arg = i;
    }
  }
  const double a = grid[arg == 0 ? 0 : arg - 1];
  const double b = grid[std::min(arg + 1, grid.size() - 1)];
  if (b > a) best = std::max(best, golden_section_max(ratio, a, b, 1e-12).value);
  return best;
}

}  // namespace rinorm
