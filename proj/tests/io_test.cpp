// Copyright The rinorm Authors.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <limits>
#include <sstream>

#include <gtest/gtest.h>

#include "random_inputs.hpp"
#include "rinorm/io.hpp"
#include "rinorm/walks.hpp"

namespace rinorm {
namespace {

Json reparse(const Json& j) { return Json::parse(j.dump()); }

TEST(StepFunctionIo, JsonRoundTrip) {
  testing::RandomInputs in(1);
  for (int i = 0; i < 50; ++i) {
    const auto f = in.step_function();
    EXPECT_EQ(step_function_from_json(reparse(to_json(f))), f);
  }
  const auto j = to_json(StepFunction::indicator(0.0, 0.25));
  EXPECT_EQ(j.dump(), R"({"breakpoints":[0.0,0.25,1.0],"values":[1.0,0.0]})");
  EXPECT_THROW(step_function_from_json(Json::parse(R"({"breakpoints":[0,1]})")), InvalidArgument);
  EXPECT_THROW(step_function_from_json(Json::parse(R"({"breakpoints":[0,2],"values":[1]})")), InvalidArgument);
}

TEST(StepFunctionIo, CsvRoundTrip) {
  testing::RandomInputs in(2);
  for (int i = 0; i < 50; ++i) {
    const auto f = in.step_function();
    std::istringstream csv(to_csv(f));
    EXPECT_EQ(step_function_from_csv(csv), f);
  }
  EXPECT_EQ(to_csv(StepFunction::indicator(0.0, 0.5)), "t_left,t_right,value\n0,0.5,1\n0.5,1,0\n");
  std::istringstream gap("t_left,t_right,value\n0,0.5,1\n0.6,1,0\n");
  EXPECT_THROW(step_function_from_csv(gap), InvalidArgument);
}

TEST(DistributionIo, ExactAndFloatRoundTrip) {
  const auto exact = an_indicator_abs_law(5, Rational(1, 3));
  const auto j = reparse(to_json(exact));
  EXPECT_EQ(exact_distribution_from_json(j), exact);
  EXPECT_TRUE(j.at("atoms").at(0).at(1).is_string());
  const auto approx = walk_distribution_float(9);
  EXPECT_EQ(float_distribution_from_json(reparse(to_json(approx))), approx);
  EXPECT_NEAR(float_distribution_from_json(j).mass(), 1.0, 1e-15);
}

TEST(ReportIo, LimitEstimateAndKruglovVerdict) {
  const LimitEstimate e{0.7071, 0.70712, -1048576.0, 10, true};
  const auto e2 = limit_estimate_from_json(reparse(to_json(e)));
  EXPECT_EQ(e2.value, e.value);
  EXPECT_EQ(e2.previous, e.previous);
  EXPECT_EQ(e2.log2_grid_min, e.log2_grid_min);
  EXPECT_EQ(e2.window, e.window);
  EXPECT_EQ(e2.converged, e.converged);

  KruglovVerdict v;
  v.sup_value = std::numeric_limits<double>::infinity();
  v.n_used = 714025;
  v.t_argmax = 0.00390625;
  v.log2_t_argmax = -8;
  const auto j = reparse(to_json(v));
  EXPECT_EQ(j.at("sup_value"), "inf");
  const auto v2 = kruglov_verdict_from_json(j);
  EXPECT_TRUE(std::isinf(v2.sup_value));
  EXPECT_EQ(v2.n_used, v.n_used);
  EXPECT_EQ(v2.log2_t_argmax, v.log2_t_argmax);
  EXPECT_EQ(v2.finite, v.finite);
}

TEST(ReportIo, DichotomyReportRoundTrip) {
  DichotomyReport r;
  r.generator = "example7";
  r.branch = Branch::PowerBound;
  r.witness_n0 = 2;
  r.q = 0.8946;
  r.C = 8.34;
  r.a_estimates[2] = LimitEstimate{1.0000023, 1.00001, -1048576.0, 10, true};
  r.c_estimates[3] = LimitEstimate{0.57735, 0.57736, -1048576.0, 10, true};
  r.operator_norms = {{1, 1.0}, {2, 1.86}};
  r.margin = 1e-3;
  r.kruglov = KruglovVerdict{};
  const auto j = reparse(to_json(r));
  const auto r2 = dichotomy_report_from_json(j);
  EXPECT_EQ(to_json(r2).dump(), j.dump());
  EXPECT_EQ(r2.branch, Branch::PowerBound);
  EXPECT_EQ(r2.witness_n0, 2);
  EXPECT_EQ(r2.a_estimates.at(2).value, 1.0000023);

  DichotomyReport bare;
  bare.generator = "power:1";
  bare.failing_condition = "a(k) >= k - margin for all probed k";
  const auto jb = reparse(to_json(bare));
  EXPECT_TRUE(jb.at("q").is_null());
  const auto b2 = dichotomy_report_from_json(jb);
  EXPECT_FALSE(b2.q.has_value());
  EXPECT_FALSE(b2.kruglov.has_value());
  EXPECT_EQ(b2.failing_condition, bare.failing_condition);
}

TEST(ReportIo, GrowthFitAndMcEstimate) {
  GrowthFit fit;
  fit.pairs = {{16, 4.1}, {32, 5.8}, {64, 8.2}};
  fit.q = 0.5;
  fit.C = 1.02;
  fit.residual = 3e-3;
  fit.burn_in = 0;
  const auto f2 = growth_fit_from_json(reparse(to_json(fit)));
  EXPECT_EQ(f2.pairs, fit.pairs);
  EXPECT_EQ(f2.q, fit.q);
  EXPECT_EQ(f2.burn_in, 0);
  const std::string csv = to_csv(fit);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "n,value,fit_q,fit_C,residual");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);

  const McEstimate e{0.7505, 0.0019, 100000};
  const auto e2 = mc_estimate_from_json(reparse(to_json(e)));
  EXPECT_EQ(e2.value, e.value);
  EXPECT_EQ(e2.std_error, e.std_error);
  EXPECT_EQ(e2.trials, e.trials);
}

TEST(ReportIo, MalformedInputIsInvalidArgument) {
  EXPECT_THROW(mc_estimate_from_json(Json::parse(R"({"value":"x"})")), InvalidArgument);
  EXPECT_THROW(dichotomy_report_from_json(Json::parse("[]")), InvalidArgument);
}

}  // namespace
}  // namespace rinorm
