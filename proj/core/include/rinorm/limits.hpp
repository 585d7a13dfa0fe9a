// Copyright The rinorm Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "rinorm/generators.hpp"

namespace rinorm {

/// Probe grid for limits at u -> 0.
///
/// Probes sit at u = 2^-x with depths x growing geometrically from
/// min_depth to max_depth (points_per_octave probes per doubling of x).
/// Depths are handled in log coordinates, so max_depth far beyond 1074
/// is fine.
struct LimitGrid {
  double min_depth = 1.0;
  double max_depth = 1048576.0;  // 2^20
  int points_per_octave = 4;
  int window = 10;
  double tolerance = 1e-4;

  std::vector<double> depths() const;
};

/// Finite-grid estimate of a limsup at zero.
///
/// `value` is the maximum of the probed ratio over the last `window` grid
/// points; `previous` is the same maximum over the window before it.
/// converged iff |value - previous| <= tolerance * max(1, |value|).
struct LimitEstimate {
  double value = 0.0;
  double previous = 0.0;
  double log2_grid_min = 0.0;  // log2 of the smallest u probed
  int window = 0;
  bool converged = false;
};

/// limsup_{u->0} ψ(k u) / ψ(u), k >= 2.
LimitEstimate limsup_ratio_k(const ConcaveGenerator& psi, int k, const LimitGrid& grid = {});

/// limsup_{u->0} ψ(u^l) / ψ(u), l >= 2.
LimitEstimate limsup_ratio_l(const ConcaveGenerator& psi, int l, const LimitGrid& grid = {});

/// limsup_{u->0} (1/ψ(u)) Σ_{s=1}^n ψ(2^{1-s} C(n,s) u^s), n >= 1.
LimitEstimate limsup_general(const ConcaveGenerator& psi, int n, const LimitGrid& grid = {});

/// c^{log(m)/log(l) - 1}: the bound on limsup ψ(w^m)/ψ(w) implied by
/// limsup ψ(w^l)/ψ(w) = c, for m >= l >= 2 and 0 < c < 1.
double power_ratio_bound(double c, int m, int l);

}  // namespace rinorm
