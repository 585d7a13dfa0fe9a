// Copyright The rinorm Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <istream>
#include <string>

#include <nlohmann/json.hpp>

#include "rinorm/dichotomy.hpp"
#include "rinorm/experiments.hpp"
#include "rinorm/limits.hpp"
#include "rinorm/stepfn.hpp"
#include "rinorm/walks.hpp"

namespace rinorm {

/// Key order is insertion order so identical reports serialize identically.
/// Non-finite numbers are written as the strings "inf", "-inf" and "nan".
using Json = nlohmann::ordered_json;

Json to_json(const StepFunction& f);
StepFunction step_function_from_json(const Json& j);

/// Columns t_left, t_right, value with a header row.
std::string to_csv(const StepFunction& f);
StepFunction step_function_from_csv(std::istream& in);

/// Atoms as [value, "p/q"] pairs.
Json to_json(const ExactDistribution& d);
/// Atoms as [value, probability] pairs.
Json to_json(const FloatDistribution& d);
ExactDistribution exact_distribution_from_json(const Json& j);
FloatDistribution float_distribution_from_json(const Json& j);

Json to_json(const LimitEstimate& e);
LimitEstimate limit_estimate_from_json(const Json& j);

Json to_json(const KruglovVerdict& v);
KruglovVerdict kruglov_verdict_from_json(const Json& j);

Json to_json(const DichotomyReport& r);
DichotomyReport dichotomy_report_from_json(const Json& j);

Json to_json(const GrowthFit& f);
GrowthFit growth_fit_from_json(const Json& j);

/// Columns n, value, fit_q, fit_C, residual; one row per pair.
std::string to_csv(const GrowthFit& f);

Json to_json(const McEstimate& e);
McEstimate mc_estimate_from_json(const Json& j);

}  // namespace rinorm
