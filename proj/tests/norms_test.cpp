// Copyright The rinorm Authors.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <vector>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <gtest/gtest.h>

#include "random_inputs.hpp"
#include "rinorm/norms.hpp"

namespace rinorm {
namespace {

std::vector<SpaceSpec> sample_spaces() {
  return {LorentzSpace{generators::power(0.5)},
          LorentzSpace{generators::example7()},
          MarcinkiewiczSpace{generators::logpow(2.0)},
          MarcinkiewiczSpace{generators::gauss()},
          OrliczSpace{OrliczFunction::exp_power(1.0)},
          OrliczSpace{OrliczFunction::exp_power(2.0)},
          OrliczSpace{OrliczFunction::power(3.0)},
          LpqSpace{2.0, 1.0},
          LpqSpace{1.5, 1.2},
          LpqSpace{4.0, 3.0}};
}

TEST(Lorentz, Examples) {
  const auto psi = generators::power(0.5);
  for (double u : {1.0, 0.5, 0.01})
    EXPECT_NEAR(lorentz_norm(StepFunction::indicator(0.0, u), psi), psi(u), 1e-15);
  const StepFunction f({0.0, 0.25, 0.5, 1.0}, {2.0, 1.0, 0.0});
  EXPECT_NEAR(lorentz_norm(f, psi), 1.0 + std::sqrt(0.5) - 0.5, 1e-15);
  EXPECT_NEAR(lorentz_norm(f.scaled(3.0), psi), 3.0 * lorentz_norm(f, psi), 1e-14);
  EXPECT_EQ(lorentz_norm(StepFunction{}, psi), 0.0);
}

TEST(Marcinkiewicz, Examples) {
  testing::RandomInputs in(1);
  for (int i = 0; i < 20; ++i) {
    const auto phi = in.generator();
    const double u = in.measure(20.0);
    EXPECT_NEAR(marcinkiewicz_norm(StepFunction::indicator(0.0, u), phi), u / phi(u), 1e-13 * u / phi(u))
        << phi.label() << " u=" << u;
  }
  EXPECT_NEAR(marcinkiewicz_norm(StepFunction::constant(1.0), generators::logpow(2.0)), 1.0, 1e-15);
  EXPECT_EQ(marcinkiewicz_norm(StepFunction{}, generators::logpow(2.0)), 0.0);
}

TEST(Marcinkiewicz, MatchesDenseScan) {
  testing::RandomInputs in(2);
  for (int trial = 0; trial < 40; ++trial) {
    const auto f = in.step_function();
    const auto phi = in.generator();
    const auto g = rearrange(f);
    double scan = 0.0;
    double integral = 0.0;
    const int steps = 1 << 14;
    for (int i = 1; i <= steps; ++i) {
      const double t = static_cast<double>(i) / steps;
      integral += g(t - 0.5 / steps) / steps;
      scan = std::max(scan, integral / phi(t));
    }
    const double exact = marcinkiewicz_norm(f, phi);
    EXPECT_GE(exact, scan * (1 - 1e-3)) << phi.label();
    EXPECT_LE(exact, scan * (1 + 1e-2) + 1e-12) << phi.label();
  }
}

TEST(Orlicz, Examples) {
  const auto n1 = OrliczFunction::exp_power(1.0);
  const auto n2 = OrliczFunction::exp_power(2.0);
  const auto one = StepFunction::constant(1.0);
  EXPECT_NEAR(orlicz_norm(one, n1), 1.0 / std::log(2.0), 1e-12);
  EXPECT_NEAR(orlicz_norm(one.scaled(2.5), n1), 2.5 / std::log(2.0), 1e-12);
  EXPECT_NEAR(orlicz_norm(one, n2), 1.0 / std::sqrt(std::log(2.0)), 1e-12);
  EXPECT_EQ(orlicz_norm(StepFunction{}, n2), 0.0);
  EXPECT_NEAR(orlicz_norm(StepFunction::indicator(0.0, 0.125), OrliczFunction::power(3.0)), 0.5, 1e-12);
}

TEST(Orlicz, ModularIsOneAtTheNorm) {
  testing::RandomInputs in(3);
  for (int trial = 0; trial < 100; ++trial) {
    const auto f = in.step_function();
    if (f.sup() == 0.0) continue;
    const auto m = in.coin() ? OrliczFunction::exp_power(in.uniform(1.0, 6.0)) : OrliczFunction::power(in.uniform(1.0, 5.0));
    const double lambda = orlicz_norm(f, m);
    EXPECT_NEAR(orlicz_modular(DecreasingProfile::from_step_function(f), m, lambda), 1.0, 1e-12) << m.label();
  }
}

TEST(Orlicz, FamilyChecks) {
  EXPECT_TRUE(check_orlicz(OrliczFunction::exp_power(1.0)));
  EXPECT_TRUE(check_orlicz(OrliczFunction::exp_power(4.0)));
  EXPECT_TRUE(check_orlicz(OrliczFunction::power(2.0)));
  EXPECT_THROW(OrliczFunction::exp_power(0.5), InvalidArgument);
  EXPECT_THROW(OrliczFunction::power(0.9), InvalidArgument);
  const auto n2 = OrliczFunction::exp_power(2.0);
  EXPECT_NEAR(n2(1.5), std::expm1(2.25), 1e-14);
  EXPECT_NEAR(n2.log_value(40.0), 1600.0, 1e-9);
  EXPECT_NEAR(n2.inverse_log(std::log(n2(0.7))), 0.7, 1e-14);
}

TEST(Lpq, IndicatorsHaveNormPowerOfMeasure) {
  testing::RandomInputs in(4);
  for (int i = 0; i < 100; ++i) {
    const double u = in.measure(30.0);
    const double p = in.uniform(1.01, 10.0);
    const double q = in.uniform(1.0, 10.0);
    EXPECT_EQ(lpq_norm(StepFunction::indicator(0.0, u), p, q), std::pow(u, 1.0 / p));
  }
  EXPECT_EQ(lpq_norm(StepFunction::indicator(0.0, 0.25), 2.0, 1.0), 0.5);
  EXPECT_EQ(lpq_norm(StepFunction{}, 2.0, 2.0), 0.0);
  EXPECT_THROW(lpq_norm(StepFunction::constant(1.0), 1.0, 2.0), InvalidArgument);
  EXPECT_THROW(lpq_norm(StepFunction::constant(1.0), 2.0, 0.5), InvalidArgument);
}

TEST(Lpq, MatchesQuadrature) {
  // (q/p) ∫ f*(t)^q t^{q/p - 1} dt, integrated piece by piece.
  const StepFunction f({0.0, 0.1, 0.4, 1.0}, {3.0, 1.0, 0.5});
  const double p = 1.5;
  const double q = 1.2;
  boost::math::quadrature::tanh_sinh<double> integrator;
  double acc = 0.0;
  for (std::size_t i = 0; i < f.pieces(); ++i) {
    const double a = f.breakpoints()[i];
    const double b = f.breakpoints()[i + 1];
    acc += std::pow(f.values()[i], q) * integrator.integrate([&](double t) { return std::pow(t, q / p - 1.0); }, a, b);
  }
  EXPECT_NEAR(lpq_norm(f, p, q), std::pow(q / p * acc, 1.0 / q), 1e-12);
}

TEST(Norms, PositiveHomogeneity) {
  testing::RandomInputs in(5);
  for (const auto& space : sample_spaces()) {
    for (int trial = 0; trial < 20; ++trial) {
      const auto f = in.step_function();
      const double c = in.uniform(0.01, 100.0);
      const double a = norm(f.scaled(c), space);
      const double b = c * norm(f, space);
      EXPECT_NEAR(a, b, 1e-10 * std::max(1.0, b)) << to_string(space);
    }
  }
}

TEST(Norms, TriangleInequality) {
  testing::RandomInputs in(6);
  for (const auto& space : sample_spaces()) {
    for (int trial = 0; trial < 100; ++trial) {
      const auto f = in.step_function();
      const auto g = in.step_function();
      const double lhs = norm(f + g, space);
      const double rhs = norm(f, space) + norm(g, space);
      EXPECT_LE(lhs, rhs + 1e-10 * std::max(1.0, rhs)) << to_string(space);
    }
  }
}

TEST(Norms, MonotoneUnderPointwiseOrder) {
  testing::RandomInputs in(7);
  for (const auto& space : sample_spaces()) {
    for (int trial = 0; trial < 30; ++trial) {
      const auto f = in.dyadic_step_function();
      const auto g = f + in.dyadic_step_function();
      EXPECT_LE(norm(f, space), norm(g, space) * (1 + 1e-12) + 1e-15) << to_string(space);
    }
  }
}

TEST(Norms, RearrangementInvariant) {
  testing::RandomInputs in(8);
  for (const auto& space : sample_spaces()) {
    const auto f = in.step_function();
    EXPECT_NEAR(norm(f, space), norm(rearrange(f), space), 1e-12 * std::max(1.0, norm(f, space)));
  }
}

TEST(Norms, ProfileAndStepFunctionAgree) {
  testing::RandomInputs in(9);
  for (const auto& space : sample_spaces()) {
    const auto f = in.step_function();
    const double a = norm(f, space);
    EXPECT_NEAR(norm(DecreasingProfile::from_step_function(f), space), a, 1e-12 * std::max(1.0, a));
  }
}

TEST(Norms, ExpLpAgreesWithMarcinkiewiczUpToConstant) {
  for (double p : {1.0, 2.0, 4.0}) {
    const auto m = OrliczFunction::exp_power(p);
    const auto phi = generators::logpow(p);
    double lo = INFINITY;
    double hi = 0.0;
    for (int j = 1; j <= 40; ++j) {
      const auto chi = StepFunction::indicator(0.0, std::exp2(-j));
      const double r = orlicz_norm(chi, m) / marcinkiewicz_norm(chi, phi);
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    EXPECT_GE(lo, 0.25) << p;
    EXPECT_LE(hi, 4.0) << p;
  }
}

TEST(Dilation, Examples) {
  EXPECT_NEAR(dilation_norm_lorentz(1.0, generators::example7()), 1.0, 1e-15);
  EXPECT_NEAR(dilation_norm_lorentz(4.0, generators::power(0.5)), 2.0, 1e-12);
  EXPECT_NEAR(dilation_norm_lorentz(0.5, generators::power(1.0)), 0.5, 1e-12);
  EXPECT_THROW(dilation_norm_lorentz(0.0, generators::power(1.0)), InvalidArgument);
}

TEST(Dilation, SubmultiplicativeAndBounded) {
  testing::RandomInputs in(10);
  for (int trial = 0; trial < 40; ++trial) {
    const auto psi = in.generator();
    const double a = std::exp2(in.uniform(-6.0, 6.0));
    const double b = std::exp2(in.uniform(-6.0, 6.0));
    const double ab = dilation_norm_lorentz(a * b, psi);
    EXPECT_LE(ab, dilation_norm_lorentz(a, psi) * dilation_norm_lorentz(b, psi) * (1 + 1e-9)) << psi.label();
    if (a <= 1.0) {
      EXPECT_LE(dilation_norm_lorentz(a, psi), 1.0 + 1e-12);
    }
    const double at_one = psi(std::min(1.0, a)) / psi(1.0);
    EXPECT_GE(dilation_norm_lorentz(a, psi), at_one * (1 - 1e-12));
  }
}

TEST(Dilation, NormIsAttainedByDilatedIndicators) {
  const auto psi = generators::example7();
  const double tau = 3.0;
  const double claimed = dilation_norm_lorentz(tau, psi);
  double best = 0.0;
  std::vector<double> probes{1.0 / tau};
  for (int j = 0; j <= 3200; ++j) probes.push_back(std::exp2(-j / 64.0));
  for (double u : probes) {
    const auto chi = StepFunction::indicator(0.0, u);
    best = std::max(best, lorentz_norm(dilate(chi, tau), psi) / lorentz_norm(chi, psi));
  }
  EXPECT_GE(claimed, best * (1 - 1e-12));
  EXPECT_LE(claimed, best * (1 + 1e-3));
}

TEST(Spaces, ParseAndPrint) {
  for (const char* dsl : {"lorentz:power:0.5", "marcinkiewicz:logpow:2", "orlicz:Np:2", "orlicz:pow:3",
                          "lpq:1.5:1.2", "lorentz:example7", "marcinkiewicz:gauss"})
    EXPECT_EQ(to_string(parse_space(dsl)), dsl);
  for (const char* bad : {"lorentz", "lorentz:nope", "orlicz:Np:0.5", "orlicz:exp:2", "lpq:1:2", "lpq:2:0.5",
                          "lpq:2", "sobolev:1", ""})
    EXPECT_THROW(parse_space(bad), InvalidArgument) << bad;
  EXPECT_NEAR(norm(StepFunction::indicator(0.0, 0.25), parse_space("lorentz:power:0.5")), 0.5, 1e-15);
}

}  // namespace
}  // namespace rinorm
