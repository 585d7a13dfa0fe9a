// Copyright The rinorm Authors.
// SPDX-License-Identifier: Apache-2.0

#include "rinorm/dichotomy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "rinorm/numeric.hpp"

namespace rinorm {

namespace {

constexpr long double kLn2L = 0.693147180559945309417232121458176568L;

}  // namespace

double g_n(const ConcaveGenerator& psi, const IndicatorTailTable& table, long double log_u) {
  const long double base = psi.log_value(log_u);
  CompensatedSum<long double> sum;
  for (long double lt : table.log_tails(log_u))
    if (lt != -std::numeric_limits<long double>::infinity()) sum += std::exp(psi.log_value(lt) - base);
  return static_cast<double>(sum.value() / table.n());
}

double g_n(const ConcaveGenerator& psi, int n, double u) {
  if (!(u > 0.0 && u <= 1.0)) throw InvalidArgument("g_n needs u in (0, 1]");
  return g_n(psi, IndicatorTailTable(n), std::log(static_cast<long double>(u)));
}

LimitEstimate g_limit_zero(const ConcaveGenerator& psi, int n, const LimitGrid& grid) {
  LimitEstimate est = limsup_general(psi, n, grid);
  est.value /= n;
  est.previous /= n;
  return est;
}

SupG sup_g(const ConcaveGenerator& psi, int n, const SupGOptions& options) {
  if (n < 1) throw InvalidArgument("sup_g needs n >= 1");
  if (!(options.max_depth > 0.0) || options.points_per_unit < 1)
    throw InvalidArgument("sup_g needs a positive depth and grid density");
  const IndicatorTailTable table(n);
  auto g_at_depth = [&](double j) { return g_n(psi, table, -static_cast<long double>(j) * kLn2L); };

  const auto count = static_cast<int>(std::floor(options.max_depth * options.points_per_unit));
  const double step = 1.0 / options.points_per_unit;
  SupG out;
  int arg = 0;
  for (int i = 0; i <= count; ++i) {
    const double g = g_at_depth(i * step);
    if (g > out.interior) {
      out.interior = g;
      arg = i;
    }
  }
  out.log2_u_argmax = -arg * step;
  const double lo = std::max(0.0, (arg - 1) * step);
  const double hi = std::min(count * step, (arg + 1) * step);
  const auto refined = golden_section_max(g_at_depth, lo, hi, options.refine_tol);
  if (refined.value > out.interior) {
    out.interior = refined.value;
    out.log2_u_argmax = -refined.x;
  }

  const LimitEstimate limit = g_limit_zero(psi, n, options.limit_grid);
  out.limit = limit.value;
  out.limit_converged = limit.converged;
  out.value = std::max(out.interior, out.limit);
  return out;
}

double lorentz_operator_norm(const ConcaveGenerator& psi, int n, const SupGOptions& options) {
  return n * sup_g(psi, n, options).value;
}

namespace {

struct PartialSums {
  long double at_snapshot = 0.0L;
  long double at_end = 0.0L;
  std::int64_t terms = 0;
  std::int64_t crossed_at = -1;
};

// Partial sums of (1/φ(t)) Σ φ(t^n/n!) at n = snapshot and n = end; stops
// early once the remaining terms (each below the current one) cannot move
// the sum.
PartialSums kruglov_partial(const ConcaveGenerator& phi, long double log_t, std::int64_t snapshot,
                            std::int64_t end, double threshold) {
  const long double base = phi.log_value(log_t);
  PartialSums out;
  CompensatedSum<long double> sum;
  long double log_factorial = 0.0L;
  for (std::int64_t n = 1; n <= end; ++n) {
    log_factorial += std::log(static_cast<long double>(n));
    const long double term = std::exp(phi.log_value(n * log_t - log_factorial) - base);
    sum += term;
    out.terms = n;
    const long double s = sum.value();
    if (n == snapshot) out.at_snapshot = s;
    if (out.crossed_at < 0 && s > threshold) {
      out.crossed_at = n;
      out.at_snapshot = out.at_end = s;
      return out;
    }
    if (static_cast<long double>(end - n) * term < 1e-19L * s) {
      if (n < snapshot) out.at_snapshot = s;
      out.at_end = s;
      return out;
    }
  }
  out.at_end = sum.value();
  return out;
}

}  // namespace

double kruglov_series_log(const ConcaveGenerator& phi, long double log_t, std::int64_t terms) {
  if (!(log_t <= 0.0L)) throw InvalidArgument("kruglov series needs t in (0, 1]");
  if (terms < 1) throw InvalidArgument("kruglov series needs at least one term");
  return static_cast<double>(
      kruglov_partial(phi, log_t, terms, terms, std::numeric_limits<double>::infinity()).at_end);
}

double kruglov_series(const ConcaveGenerator& phi, double t, std::int64_t terms) {
  if (!(t > 0.0 && t <= 1.0)) throw InvalidArgument("kruglov series needs t in (0, 1]");
  return kruglov_series_log(phi, std::log(static_cast<long double>(t)), terms);
}

KruglovVerdict kruglov_check(const ConcaveGenerator& phi, const KruglovParams& params) {
  std::vector<double> depths = params.log2_depths;
  if (depths.empty()) {
    depths.push_back(0.0);
    for (int e = 0; e <= 20; ++e) depths.push_back(std::exp2(e));
  }
  for (double d : depths)
    if (!(d >= 0.0) || !std::isfinite(d)) throw InvalidArgument("kruglov probe depths must be finite and >= 0");
  if (params.max_terms < 1) throw InvalidArgument("kruglov check needs max_terms >= 1");

  KruglovVerdict v;
  auto record_argmax = [&](double depth, long double value) {
    if (static_cast<double>(value) > v.sup_value || v.n_used == 0) {
      v.sup_value = static_cast<double>(value);
      v.log2_t_argmax = -depth;
      v.t_argmax = std::exp2(-depth);
    }
  };

  for (double d : depths) {
    const auto p = kruglov_partial(phi, -static_cast<long double>(d) * kLn2L, params.max_terms,
                                   params.max_terms, params.threshold);
    if (p.crossed_at >= 0) {
      v.finite = false;
      v.sup_value = std::numeric_limits<double>::infinity();
      v.n_used = p.crossed_at;
      v.log2_t_argmax = -d;
      v.t_argmax = std::exp2(-d);
      return v;
    }
  }

  bool stable = true;
  for (double d : depths) {
    const auto p = kruglov_partial(phi, -static_cast<long double>(d) * kLn2L, params.max_terms,
                                   4 * params.max_terms, std::numeric_limits<double>::infinity());
    if (std::abs(p.at_end - p.at_snapshot) > params.rel_tol * p.at_end) stable = false;
    record_argmax(d, p.at_end);
    v.n_used = std::max(v.n_used, p.terms);
  }
  v.finite = stable && v.sup_value < params.threshold;
  v.inconclusive = !stable;
  return v;
}

std::string to_string(Branch b) { return b == Branch::PowerBound ? "PowerBound" : "NormEqualsN"; }

Branch parse_branch(std::string_view text) {
  if (text == "PowerBound") return Branch::PowerBound;
  if (text == "NormEqualsN") return Branch::NormEqualsN;
  throw InvalidArgument("unknown branch '" + std::string(text) + "'");
}

DichotomyReport classify(const ConcaveGenerator& psi, const ClassifyParams& params) {
  if (params.k_list.empty() || params.l_list.empty() || params.n_list.empty())
    throw InvalidArgument("classify needs nonempty k, l and n lists");
  DichotomyReport r;
  r.generator = psi.label();
  r.margin = params.margin;

  bool ratio_ok = false;
  for (int k : params.k_list) {
    const auto est = limsup_ratio_k(psi, k, params.grid);
    r.a_estimates[k] = est;
    r.inconclusive = r.inconclusive || !est.converged;
    ratio_ok = ratio_ok || est.value < k - params.margin;
  }
  bool power_ok = false;
  for (int l : params.l_list) {
    const auto est = limsup_ratio_l(psi, l, params.grid);
    r.c_estimates[l] = est;
    r.inconclusive = r.inconclusive || !est.converged;
    power_ok = power_ok || est.value < 1.0 - params.margin;
  }
  if (params.with_kruglov) r.kruglov = kruglov_check(psi, params.kruglov);

  if (!ratio_ok) {
    r.failing_condition = "a(k) >= k - margin for every probed k";
    return r;
  }
  if (!power_ok) {
    r.failing_condition = "c(l) >= 1 - margin for every probed l";
    return r;
  }

  std::map<int, double> norms;
  auto norm_of = [&](int n) {
    auto it = norms.find(n);
    if (it == norms.end()) it = norms.emplace(n, lorentz_operator_norm(psi, n, params.sup_options)).first;
    return it->second;
  };
  std::set<int> ns(params.n_list.begin(), params.n_list.end());
  for (int n : ns) {
    if (n < 2) continue;
    if (norm_of(n) < n * (1.0 - params.margin)) {
      r.witness_n0 = n;
      break;
    }
  }
  if (!r.witness_n0) {
    r.inconclusive = true;
    r.failing_condition = "no probed n has ‖A_n‖ < n (1 - margin)";
    r.operator_norms.assign(norms.begin(), norms.end());
    return r;
  }

  const int n0 = *r.witness_n0;
  double max_norm = 0.0;
  for (int s = 1; s <= n0; ++s) max_norm = std::max(max_norm, norm_of(s));
  const double q = std::max(0.5, std::log(norm_of(n0)) / std::log(static_cast<double>(n0)));
  r.branch = Branch::PowerBound;
  r.q = q;
  r.C = (std::sqrt(2.0) + 1.0) * std::pow(n0, q) * max_norm;
  r.operator_norms.assign(norms.begin(), norms.end());
  return r;
}

}  // namespace rinorm
