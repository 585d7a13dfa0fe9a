// Copyright The rinorm Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "rinorm/generators.hpp"
#include "rinorm/stepfn.hpp"

namespace rinorm {

/// Young function M of an Orlicz space: increasing, convex, M(0) = 0.
class OrliczFunction {
 public:
  enum class Kind { ExpPower, Power };

  /// N_p(u) = exp(u^p) - 1, p >= 1.
  static OrliczFunction exp_power(double p);
  /// u^r, r >= 1 (the Orlicz space is L_r).
  static OrliczFunction power(double r);

  double operator()(double x) const;
  /// log M(x); finite for every x > 0 even when M(x) overflows.
  double log_value(double x) const;
  /// M^{-1}(exp(log_y)).
  double inverse_log(double log_y) const;

  Kind kind() const { return kind_; }
  double parameter() const { return param_; }
  std::string label() const;

 private:
  OrliczFunction(Kind kind, double param) : kind_(kind), param_(param) {}
  Kind kind_;
  double param_;
};

/// Grid check of M(0) = 0, monotonicity and midpoint convexity on [0, 8].
bool check_orlicz(const OrliczFunction& m);

struct LorentzSpace {
  ConcaveGenerator psi;
};
struct MarcinkiewiczSpace {
  ConcaveGenerator phi;
};
struct OrliczSpace {
  OrliczFunction m;
};
/// L_{p,q} with p > 1, q >= 1.
struct LpqSpace {
  double p;
  double q;
};

using SpaceSpec = std::variant<LorentzSpace, MarcinkiewiczSpace, OrliczSpace, LpqSpace>;

/// "lorentz:<generator>", "marcinkiewicz:<generator>", "orlicz:Np:<p>",
/// "orlicz:pow:<r>", "lpq:<p>:<q>".
SpaceSpec parse_space(std::string_view dsl);
std::string to_string(const SpaceSpec& space);

/// ∫ f* dψ.
double lorentz_norm(const StepFunction& f, const ConcaveGenerator& psi);
double lorentz_norm(const DecreasingProfile& f, const ConcaveGenerator& psi);

/// sup_{0<τ<=1} (1/φ(τ)) ∫_0^τ f*.
double marcinkiewicz_norm(const StepFunction& f, const ConcaveGenerator& phi);
double marcinkiewicz_norm(const DecreasingProfile& f, const ConcaveGenerator& phi);

/// Luxemburg norm inf{λ > 0 : ∫ M(|f|/λ) <= 1}.
double orlicz_norm(const StepFunction& f, const OrliczFunction& m);
double orlicz_norm(const DecreasingProfile& f, const OrliczFunction& m);

/// Modular ∫ M(|f|/λ).
double orlicz_modular(const DecreasingProfile& f, const OrliczFunction& m, double lambda);

/// ((q/p) ∫_0^1 (f*(t) t^{1/p})^q dt/t)^{1/q}; indicators of measure u
/// have norm u^{1/p}.
double lpq_norm(const StepFunction& f, double p, double q);
double lpq_norm(const DecreasingProfile& f, double p, double q);

double norm(const StepFunction& f, const SpaceSpec& space);
double norm(const DecreasingProfile& f, const SpaceSpec& space);

/// Norm of the dilation σ_τ on Λ(ψ): sup_{0<u<=1} ψ(min(1, τu)) / ψ(u).
double dilation_norm_lorentz(double tau, const ConcaveGenerator& psi);

}  // namespace rinorm
