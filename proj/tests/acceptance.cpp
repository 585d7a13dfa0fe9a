// Copyright The rinorm Authors.
// SPDX-License-Identifier: Apache-2.0
//
// Acceptance runner. One line per criterion; exit status is the number of
// failures.

#include <chrono>
#include <cmath>
#include <exception>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "random_inputs.hpp"
#include "rinorm/dichotomy.hpp"
#include "rinorm/experiments.hpp"
#include "rinorm/norms.hpp"
#include "rinorm/walks.hpp"

namespace rinorm {
namespace {

using R = Rational;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail << "first failure: " << what << "; ";
    pass = pass && ok;
  }
};

struct Criterion {
  std::string id;
  std::string title;
  double budget_seconds;
  std::function<void(Outcome&)> body;
};

ExactDistribution enumerate_abs_law(int n, const R& u) {
  const R weights[3] = {1 - u, u / 2, u / 2};
  const int steps[3] = {0, 1, -1};
  ExactDistribution law;
  std::vector<int> digits(static_cast<std::size_t>(n), 0);
  while (true) {
    R p(1);
    int sum = 0;
    for (int d : digits) {
      p *= weights[d];
      sum += steps[d];
    }
    law.atoms[std::abs(sum)] += p;
    int i = 0;
    while (i < n && digits[static_cast<std::size_t>(i)] == 2) digits[static_cast<std::size_t>(i++)] = 0;
    if (i == n) break;
    ++digits[static_cast<std::size_t>(i)];
  }
  return law;
}

std::vector<int> powers_of_two(int lo, int hi) {
  std::vector<int> ns;
  for (int e = lo; e <= hi; ++e) ns.push_back(1 << e);
  return ns;
}

void exact_combinatorics(Outcome& out) {
  int compared = 0;
  for (int n = 1; n <= 8; ++n)
    for (const R& u : {R(1, 4), R(1, 2), R(3, 4)}) {
      const auto law = enumerate_abs_law(n, u);
      for (int s = 1; s <= n; ++s) {
        R tail(0);
        for (const auto& [x, p] : law.atoms)
          if (x >= s) tail += p;
        out.require(an_indicator_tail(n, u, s) == tail,
                    "n=" + std::to_string(n) + " u=" + u.str() + " s=" + std::to_string(s));
        ++compared;
      }
    }
  out.detail << compared << " exact tail comparisons";
}

void top_layer(Outcome& out) {
  for (int n = 1; n <= 20; ++n)
    for (const R& u : {R(1, 4), R(1, 2), R(3, 4), R(1), R(2, 7)}) {
      R expected = pow2(1 - n);
      for (int i = 0; i < n; ++i) expected *= u;
      out.require(an_indicator_tail(n, u, n) == expected, "n=" + std::to_string(n) + " u=" + u.str());
    }
  out.detail << "n = 1..20, 5 measures each";
}

void l1_degeneracy(Outcome& out) {
  const auto id = generators::power(1.0);
  for (int n : {2, 8, 32}) {
    const double a = lorentz_operator_norm(id, n);
    out.require(a >= n * (1 - 1e-3), "norm at n=" + std::to_string(n));
    out.detail << "|A_" << n << "| = " << a << "; ";
  }
  const auto r = classify(id);
  out.require(r.branch == Branch::NormEqualsN, "branch " + to_string(r.branch));
  out.detail << "branch " << to_string(r.branch);
}

void dichotomy_positive(Outcome& out) {
  for (const auto& psi : {generators::power(0.5), generators::example7()}) {
    const auto r = classify(psi);
    out.require(r.branch == Branch::PowerBound, psi.label() + " branch " + to_string(r.branch));
    if (!(r.witness_n0 && r.q && r.C)) {
      out.require(false, psi.label() + " has no witness");
      continue;
    }
    out.require(*r.q >= 0.5 && *r.q < 1.0, psi.label() + " q");
    out.require(std::isfinite(*r.C), psi.label() + " C");
    double max_norm = 0.0;
    for (const auto& [n, v] : r.operator_norms)
      if (n <= *r.witness_n0) max_norm = std::max(max_norm, v);
    const double c_formula = (std::sqrt(2.0) + 1) * std::pow(*r.witness_n0, *r.q) * max_norm;
    out.require(std::abs(*r.C - c_formula) <= 1e-9 * c_formula, psi.label() + " C formula");
    out.detail << psi.label() << ": n0=" << *r.witness_n0 << " q=" << *r.q << " C=" << *r.C << "; ";

    std::vector<double> a(257, 0.0);
    for (int n = 1; n <= 256; ++n) a[static_cast<std::size_t>(n)] = lorentz_operator_norm(psi, n);
    int pairs = 0;
    for (int n = 1; n <= 256; ++n)
      for (int m = 1; n * m <= 256; ++m) {
        const auto at = [&](int k) { return a[static_cast<std::size_t>(k)]; };
        out.require(at(n + m) <= at(n) + at(m) + 1e-6,
                    psi.label() + " subadditive n=" + std::to_string(n) + " m=" + std::to_string(m));
        out.require(at(n * m) <= at(n) * at(m) + 1e-6,
                    psi.label() + " submultiplicative n=" + std::to_string(n) + " m=" + std::to_string(m));
        ++pairs;
      }
    out.detail << pairs << " (n, m) pairs; ";
  }
}

void gaussian_identity(Outcome& out) {
  for (int n : {2, 4, 16}) {
    const double r = gaussian_selfsimilarity_check(n);
    out.require(std::abs(r / std::sqrt(n) - 1.0) <= 0.01, "n=" + std::to_string(n));
    out.detail << "n=" << n << " ratio " << r << "; ";
  }
}

void exp_lp_exponents(Outcome& out) {
  for (double p : {1.0, 2.0, 4.0, 8.0}) {
    const auto fit = growth_table(GrowthRequest{MarcinkiewiczSpace{generators::logpow(p)}, powers_of_two(4, 14)});
    const double q_expected = p <= 2.0 ? 0.5 : 1.0 - 1.0 / p;
    const double endpoint_expected = p <= 2.0 ? 2.0 : p / (p - 1.0);
    const double endpoint = gamma_iid_endpoint(fit);
    out.require(std::abs(fit.q - q_expected) <= 0.05, "q at p=" + std::to_string(p));
    out.require(std::abs(endpoint - endpoint_expected) <= 0.1, "endpoint at p=" + std::to_string(p));
    out.detail << "p=" << p << " q=" << fit.q << " endpoint=" << endpoint << "; ";
  }
}

void kruglov(Outcome& out) {
  const auto l1 = kruglov_check(generators::power(1.0));
  out.require(l1.finite && !l1.inconclusive, "power:1 verdict");
  out.require(std::abs(l1.sup_value - (std::exp(1.0) - 1.0)) <= 1e-6, "power:1 sup");
  const auto e7 = kruglov_check(generators::example7());
  out.require(!e7.finite && !e7.inconclusive, "example7 verdict");
  out.require(e7.n_used < 1'000'000, "example7 crossing index");
  out.detail << "power:1 sup " << l1.sup_value << "; example7 crosses at N=" << e7.n_used << " t=2^"
             << e7.log2_t_argmax;
}

void property_suites(Outcome& out) {
  testing::RandomInputs in(2024);

  for (int trial = 0; trial < 200; ++trial) {
    const auto f = in.exact_step_function();
    const auto r = rearrange(f);
    out.require(r.is_non_increasing(), "rearrangement is non-increasing");
    for (const auto& level : f.values()) {
      out.require(r.measure_above(level) == f.measure_above(level), "equimeasurable");
      out.require(r.measure_above(level - R(1, 1000)) == f.measure_above(level - R(1, 1000)), "equimeasurable");
    }
    out.require(rearrange(r) == r, "idempotent");
  }
  out.detail << "rearrangement 200; ";

  for (int i = 0; i < 1000; ++i) {
    const auto psi = in.generator();
    const int n = in.integer(1, 40);
    const double u = in.measure(40.0);
    const double g = g_n(psi, n, u);
    out.require(g > 0.0 && g <= 1.0 + 1e-12, "g_n range for " + psi.label());
  }
  out.detail << "g_n 1000; ";

  for (int i = 0; i < 20; ++i) {
    const int n = in.integer(2, 30);
    const R u(in.integer(1, 64), 64);
    out.require(expectation_abs(an_indicator_abs_law(n, u)) < n * u, "strict expectation inequality");
  }
  out.detail << "expectation 20; ";

  const std::vector<SpaceSpec> spaces{LorentzSpace{generators::power(0.5)},
                                      MarcinkiewiczSpace{generators::logpow(2.0)},
                                      OrliczSpace{OrliczFunction::exp_power(2.0)},
                                      OrliczSpace{OrliczFunction::power(3.0)},
                                      LpqSpace{2.0, 1.0}};
  for (const auto& space : spaces)
    for (int trial = 0; trial < 40; ++trial) {
      const auto f = in.step_function();
      const auto g = in.step_function();
      const double c = in.uniform(0.01, 100.0);
      const double scaled = norm(f.scaled(c), space);
      const double expected = c * norm(f, space);
      out.require(std::abs(scaled - expected) <= 1e-10 * std::max(1.0, expected), "homogeneity " + to_string(space));
      const double rhs = norm(f, space) + norm(g, space);
      out.require(norm(f + g, space) <= rhs + 1e-10 * std::max(1.0, rhs), "triangle " + to_string(space));
    }
  out.detail << "homogeneity/triangle " << spaces.size() * 40 << "; ";

  McOptions opt;
  opt.trials = 100000;
  int mc = 0;
  for (const SpaceSpec& space : {SpaceSpec{LorentzSpace{generators::power(0.5)}},
                                 SpaceSpec{MarcinkiewiczSpace{generators::logpow(2.0)}},
                                 SpaceSpec{OrliczSpace{OrliczFunction::exp_power(2.0)}}, SpaceSpec{LpqSpace{1.5, 1.2}}})
    for (int n : {4, 16, 64}) {
      const auto est = mc_iid_sum_norm(SamplerSpec{Rademacher{}, 17}, n, space, opt);
      out.require(std::abs(est.value - rademacher_sum_norm(n, space)) <= 3 * est.std_error,
                  "Monte-Carlo " + to_string(space) + " n=" + std::to_string(n));
      ++mc;
    }
  out.detail << "Monte-Carlo " << mc;
}

void lpq_consistency(Outcome& out) {
  const double triples[10][3] = {{0.5, 2, 2},   {0.25, 2, 1},   {0.125, 4, 2},  {0.5, 1.5, 1.2}, {0.0625, 4, 4},
                                 {0.75, 3, 1.5}, {1.0, 2.5, 2},  {0.3, 1.5, 3},  {0.01, 8, 1},    {0.9, 1.2, 1.1}};
  int exact = 0;
  for (const auto& [u, p, q] : triples) {
    const double value = lpq_norm(StepFunction::indicator(0.0, u), p, q);
    const double expected = std::pow(u, 1.0 / p);
    out.require(value == expected,
                "indicator u=" + std::to_string(u) + " p=" + std::to_string(p) + " q=" + std::to_string(q));
    ++exact;
  }
  GrowthRequest req{LpqSpace{1.5, 1.2}, powers_of_two(2, 8), NormSource::MonteCarlo, SamplerSpec{SignedIndicator{0.5}, 11}};
  req.mc.trials = 20000;
  const auto fit = growth_table(req);
  out.require(fit.q <= 0.72, "i.i.d. growth exponent");
  out.detail << exact << " indicator triples; Lpq(1.5,1.2) q=" << fit.q;
}

}  // namespace
}  // namespace rinorm

int main() {
  using namespace rinorm;
  const std::vector<Criterion> criteria{
      {"AC1", "indicator walk tails match brute-force enumeration", 5.0, exact_combinatorics},
      {"AC2", "top layer equals 2^(1-n) u^n", 0.0, top_layer},
      {"AC3", "L1 operator norms equal n", 0.0, l1_degeneracy},
      {"AC4", "power bound for power:0.5 and example7", 0.0, dichotomy_positive},
      {"AC5", "Gaussian sums scale as sqrt(n)", 60.0, gaussian_identity},
      {"AC6", "exp(L_p) growth exponents and endpoints", 120.0, exp_lp_exponents},
      {"AC7", "Kruglov verdicts", 0.0, kruglov},
      {"AC8", "property suites", 600.0, property_suites},
      {"AC9", "L_{p,q} indicator norms and i.i.d. growth", 0.0, lpq_consistency},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome out;
    const auto start = Clock::now();
    try {
      c.body(out);
    } catch (const std::exception& e) {
      out.require(false, std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
    if (c.budget_seconds > 0.0) out.require(seconds < c.budget_seconds, "runtime budget");
    failures += !out.pass;
    std::cout << (out.pass ? "[PASS] " : "[FAIL] ") << c.id << " " << c.title << " (" << seconds << " s) "
              << out.detail.str() << std::endl;
  }
  return failures;
}
