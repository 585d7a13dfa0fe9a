// Copyright The rinorm Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rinorm/generators.hpp"
#include "rinorm/limits.hpp"
#include "rinorm/walks.hpp"

namespace rinorm {

/// g_n(u) = ‖A_n χ_(0,u]‖ / (n ‖χ_(0,u]‖) in Λ(ψ), i.e.
/// (1 / (n ψ(u))) Σ_{s=1}^n ψ(P(|A_n χ_(0,u]| >= s)).
double g_n(const ConcaveGenerator& psi, int n, double u);

/// Same, at u = exp(log_u), reusing a prebuilt tail table.
double g_n(const ConcaveGenerator& psi, const IndicatorTailTable& table, long double log_u);

/// limsup_{u->0} g_n(u).
LimitEstimate g_limit_zero(const ConcaveGenerator& psi, int n, const LimitGrid& grid = {});

struct SupGOptions {
  double max_depth = 40.0;    // grid u = 2^-j, 0 <= j <= max_depth
  int points_per_unit = 4;    // probes per unit of j
  double refine_tol = 1e-10;  // golden-section tolerance in log2 u
  LimitGrid limit_grid{};
};

struct SupG {
  double value = 0.0;         // max(interior, limit)
  double interior = 0.0;      // refined grid supremum
  double log2_u_argmax = 0.0;
  double limit = 0.0;         // g_limit_zero
  bool limit_converged = false;
};

SupG sup_g(const ConcaveGenerator& psi, int n, const SupGOptions& options = {});

/// ‖A_n‖ on Λ(ψ) = n · sup_u g_n(u).
double lorentz_operator_norm(const ConcaveGenerator& psi, int n, const SupGOptions& options = {});

struct KruglovParams {
  /// Probe points t = 2^-x. Empty means {0, 1, 2, 4, ..., 2^20}.
  std::vector<double> log2_depths;
  std::int64_t max_terms = 1'000'000;
  double threshold = 1e3;
  double rel_tol = 1e-6;
};

struct KruglovVerdict {
  bool finite = false;
  bool inconclusive = false;
  double sup_value = 0.0;  // +inf when divergent
  std::int64_t n_used = 0;
  double t_argmax = 0.0;   // may underflow; see log2_t_argmax
  double log2_t_argmax = 0.0;
};

/// (1/φ(t)) Σ_{n=1}^N φ(t^n / n!).
double kruglov_series(const ConcaveGenerator& phi, double t, std::int64_t terms);
double kruglov_series_log(const ConcaveGenerator& phi, long double log_t, std::int64_t terms);

KruglovVerdict kruglov_check(const ConcaveGenerator& phi, const KruglovParams& params = {});

enum class Branch { NormEqualsN, PowerBound };

std::string to_string(Branch b);
Branch parse_branch(std::string_view text);

struct ClassifyParams {
  std::vector<int> k_list{2, 3, 4};
  std::vector<int> l_list{2, 3};
  std::vector<int> n_list{2, 4, 8, 16, 32, 64};
  double margin = 1e-3;
  LimitGrid grid{};
  SupGOptions sup_options{};
  bool with_kruglov = true;
  KruglovParams kruglov{};
};

struct DichotomyReport {
  std::string generator;
  Branch branch = Branch::NormEqualsN;
  std::optional<int> witness_n0;
  std::optional<double> q;
  std::optional<double> C;
  std::map<int, LimitEstimate> a_estimates;
  std::map<int, LimitEstimate> c_estimates;
  std::vector<std::pair<int, double>> operator_norms;  // (n, ‖A_n‖)
  double margin = 0.0;
  std::string failing_condition;  // empty on the PowerBound branch
  bool inconclusive = false;
  std::optional<KruglovVerdict> kruglov;
};

DichotomyReport classify(const ConcaveGenerator& psi, const ClassifyParams& params = {});

}  // namespace rinorm
