// Copyright The rinorm Authors.
// SPDX-License-Identifier: Apache-2.0

#include "rinorm/io.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "rinorm/numeric.hpp"
#include "rinorm/rational.hpp"

namespace rinorm {

namespace {

Json number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

double read_number(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw InvalidArgument("expected a number, got " + j.dump());
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InvalidArgument(std::string("missing JSON field '") + key + "'");
  return j.at(key);
}

template <class F>
auto guarded(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

Json to_json(const StepFunction& f) {
  Json j;
  j["breakpoints"] = Json::array();
  for (double b : f.breakpoints()) j["breakpoints"].push_back(b);
  j["values"] = Json::array();
  for (double v : f.values()) j["values"].push_back(v);
  return j;
}

StepFunction step_function_from_json(const Json& j) {
  return guarded([&] {
    return StepFunction(field(j, "breakpoints").get<std::vector<double>>(),
                        field(j, "values").get<std::vector<double>>());
  });
}

std::string to_csv(const StepFunction& f) {
  std::string out = "t_left,t_right,value\n";
  for (std::size_t i = 0; i < f.pieces(); ++i)
    out += format_double(f.breakpoints()[i]) + "," + format_double(f.breakpoints()[i + 1]) + "," +
           format_double(f.values()[i]) + "\n";
  return out;
}

StepFunction step_function_from_csv(std::istream& in) {
  std::vector<double> bp{0.0};
  std::vector<double> v;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (header) {
      header = false;
      if (line == "t_left,t_right,value") continue;
    }
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 == std::string::npos ? c1 : c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
      throw InvalidArgument("step function CSV row needs three columns: '" + line + "'");
    const double left = parse_double(std::string_view(line).substr(0, c1), "t_left");
    const double right = parse_double(std::string_view(line).substr(c1 + 1, c2 - c1 - 1), "t_right");
    if (left != bp.back()) throw InvalidArgument("step function CSV rows must be contiguous");
    bp.push_back(right);
    v.push_back(parse_double(std::string_view(line).substr(c2 + 1), "value"));
  }
  return {std::move(bp), std::move(v)};
}

Json to_json(const ExactDistribution& d) {
  Json atoms = Json::array();
  for (const auto& [x, p] : d.atoms) atoms.push_back(Json::array({x, to_string(p)}));
  return Json{{"atoms", atoms}};
}

Json to_json(const FloatDistribution& d) {
  Json atoms = Json::array();
  for (const auto& [x, p] : d.atoms) atoms.push_back(Json::array({x, p}));
  return Json{{"atoms", atoms}};
}

ExactDistribution exact_distribution_from_json(const Json& j) {
  return guarded([&] {
    ExactDistribution d;
    for (const auto& a : field(j, "atoms")) {
      const Rational p = a.at(1).is_string() ? parse_rational(a.at(1).get<std::string>())
                                             : Rational(a.at(1).get<std::int64_t>());
      if (p < 0) throw InvalidArgument("negative probability in distribution");
      d.atoms[a.at(0).get<std::int64_t>()] = p;
    }
    return d;
  });
}

FloatDistribution float_distribution_from_json(const Json& j) {
  return guarded([&] {
    FloatDistribution d;
    for (const auto& a : field(j, "atoms")) {
      const double p = a.at(1).is_string() ? to_double(parse_rational(a.at(1).get<std::string>()))
                                           : a.at(1).get<double>();
      if (!(p >= 0.0)) throw InvalidArgument("negative probability in distribution");
      d.atoms[a.at(0).get<std::int64_t>()] = p;
    }
    return d;
  });
}

Json to_json(const LimitEstimate& e) {
  Json j;
  j["value"] = number(e.value);
  j["previous"] = number(e.previous);
  j["log2_grid_min"] = number(e.log2_grid_min);
  j["window"] = e.window;
  j["converged"] = e.converged;
  return j;
}

LimitEstimate limit_estimate_from_json(const Json& j) {
  return guarded([&] {
    LimitEstimate e;
    e.value = read_number(field(j, "value"));
    e.previous = read_number(field(j, "previous"));
    e.log2_grid_min = read_number(field(j, "log2_grid_min"));
    e.window = field(j, "window").get<int>();
    e.converged = field(j, "converged").get<bool>();
    return e;
  });
}

Json to_json(const KruglovVerdict& v) {
  Json j;
  j["finite"] = v.finite;
  j["inconclusive"] = v.inconclusive;
  j["sup_value"] = number(v.sup_value);
  j["N_used"] = v.n_used;
  j["t_argmax"] = number(v.t_argmax);
  j["log2_t_argmax"] = number(v.log2_t_argmax);
  return j;
}

KruglovVerdict kruglov_verdict_from_json(const Json& j) {
  return guarded([&] {
    KruglovVerdict v;
    v.finite = field(j, "finite").get<bool>();
    v.inconclusive = field(j, "inconclusive").get<bool>();
    v.sup_value = read_number(field(j, "sup_value"));
    v.n_used = field(j, "N_used").get<std::int64_t>();
    v.t_argmax = read_number(field(j, "t_argmax"));
    v.log2_t_argmax = read_number(field(j, "log2_t_argmax"));
    return v;
  });
}

Json to_json(const DichotomyReport& r) {
  Json j;
  j["generator"] = r.generator;
  j["branch"] = to_string(r.branch);
  j["inconclusive"] = r.inconclusive;
  j["margin"] = number(r.margin);
  j["failing_condition"] = r.failing_condition;
  j["witness_n0"] = r.witness_n0 ? Json(*r.witness_n0) : Json(nullptr);
  j["q"] = r.q ? number(*r.q) : Json(nullptr);
  j["C"] = r.C ? number(*r.C) : Json(nullptr);
  Json a = Json::object();
  for (const auto& [k, e] : r.a_estimates) a[std::to_string(k)] = to_json(e);
  j["a_estimates"] = a;
  Json c = Json::object();
  for (const auto& [l, e] : r.c_estimates) c[std::to_string(l)] = to_json(e);
  j["c_estimates"] = c;
  Json norms = Json::array();
  for (const auto& [n, v] : r.operator_norms) norms.push_back(Json::array({n, number(v)}));
  j["operator_norms"] = norms;
  j["kruglov"] = r.kruglov ? to_json(*r.kruglov) : Json(nullptr);
  return j;
}

DichotomyReport dichotomy_report_from_json(const Json& j) {
  return guarded([&] {
    DichotomyReport r;
    r.generator = field(j, "generator").get<std::string>();
    r.branch = parse_branch(field(j, "branch").get<std::string>());
    r.inconclusive = field(j, "inconclusive").get<bool>();
    r.margin = read_number(field(j, "margin"));
    r.failing_condition = field(j, "failing_condition").get<std::string>();
    if (!field(j, "witness_n0").is_null()) r.witness_n0 = j.at("witness_n0").get<int>();
    if (!field(j, "q").is_null()) r.q = read_number(j.at("q"));
    if (!field(j, "C").is_null()) r.C = read_number(j.at("C"));
    for (const auto& [k, e] : field(j, "a_estimates").items())
      r.a_estimates[std::stoi(k)] = limit_estimate_from_json(e);
    for (const auto& [l, e] : field(j, "c_estimates").items())
      r.c_estimates[std::stoi(l)] = limit_estimate_from_json(e);
    for (const auto& p : field(j, "operator_norms"))
      r.operator_norms.emplace_back(p.at(0).get<int>(), read_number(p.at(1)));
    if (!field(j, "kruglov").is_null()) r.kruglov = kruglov_verdict_from_json(j.at("kruglov"));
    return r;
  });
}

Json to_json(const GrowthFit& f) {
  Json j;
  Json pairs = Json::array();
  for (const auto& [n, v] : f.pairs) pairs.push_back(Json::array({n, number(v)}));
  j["pairs"] = pairs;
  j["q"] = number(f.q);
  j["C"] = number(f.C);
  j["residual"] = number(f.residual);
  j["burn_in"] = f.burn_in;
  j["degenerate"] = f.degenerate;
  return j;
}

GrowthFit growth_fit_from_json(const Json& j) {
  return guarded([&] {
    GrowthFit f;
    for (const auto& p : field(j, "pairs")) f.pairs.emplace_back(p.at(0).get<int>(), read_number(p.at(1)));
    f.q = read_number(field(j, "q"));
    f.C = read_number(field(j, "C"));
    f.residual = read_number(field(j, "residual"));
    f.burn_in = field(j, "burn_in").get<int>();
    f.degenerate = field(j, "degenerate").get<bool>();
    return f;
  });
}

std::string to_csv(const GrowthFit& f) {
  std::string out = "n,value,fit_q,fit_C,residual\n";
  for (const auto& [n, v] : f.pairs)
    out += std::to_string(n) + "," + format_double(v) + "," + format_double(f.q) + "," + format_double(f.C) +
           "," + format_double(f.residual) + "\n";
  return out;
}

Json to_json(const McEstimate& e) {
  Json j;
  j["value"] = number(e.value);
  j["std_error"] = number(e.std_error);
  j["trials"] = e.trials;
  return j;
}

McEstimate mc_estimate_from_json(const Json& j) {
  return guarded([&] {
    McEstimate e;
    e.value = read_number(field(j, "value"));
    e.std_error = read_number(field(j, "std_error"));
    e.trials = field(j, "trials").get<std::int64_t>();
    return e;
  });
}

}  // namespace rinorm
