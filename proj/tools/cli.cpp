// Copyright The rinorm Authors.
// SPDX-License-Identifier: Apache-2.0

#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "rinorm/dichotomy.hpp"
#include "rinorm/experiments.hpp"
#include "rinorm/io.hpp"
#include "rinorm/norms.hpp"

namespace rinorm::cli {

namespace {

std::uint64_t default_seed() {
  const char* env = std::getenv("RINORM_SEED");
  if (env == nullptr || *env == '\0') return 0;
  const std::string text(env);
  std::size_t used = 0;
  std::uint64_t seed = 0;
  try {
    seed = std::stoull(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size()) throw InvalidArgument("RINORM_SEED is not an unsigned integer: '" + text + "'");
  return seed;
}

std::string num(double x) { return fmt::format("{:.12g}", x); }

StepFunction load_step_function(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open step function '" + path + "'");
  if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv") return step_function_from_csv(in);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidArgument("step function '" + path + "' is not valid JSON: " + e.what());
  }
  return step_function_from_json(j);
}

LimitGrid limit_grid(const CommandConfig& c) {
  LimitGrid g;
  g.max_depth = c.max_depth;
  return g;
}

std::string classify_text(const DichotomyReport& r, const LimitGrid& grid) {
  std::string s;
  s += fmt::format("generator          {}\n", r.generator);
  s += fmt::format("branch             {}{}\n", to_string(r.branch), r.inconclusive ? "  (inconclusive)" : "");
  s += fmt::format("decision margin    {}\n", num(r.margin));
  s += fmt::format("limit grid         u = 2^-x, x from {} to {}, {} per octave, window {}, tol {}\n",
                   num(grid.min_depth), num(grid.max_depth), grid.points_per_octave, grid.window,
                   num(grid.tolerance));
  s += "\nlimsup psi(k u)/psi(u)   (needs < k - margin for some k)\n";
  s += fmt::format("  {:>3}  {:>16}  {:>16}  {:>12}  {}\n", "k", "estimate", "previous", "k - margin", "converged");
  for (const auto& [k, e] : r.a_estimates)
    s += fmt::format("  {:>3}  {:>16}  {:>16}  {:>12}  {}\n", k, num(e.value), num(e.previous),
                     num(k - r.margin), e.converged ? "yes" : "no");
  s += "\nlimsup psi(u^l)/psi(u)   (needs < 1 - margin for some l)\n";
  s += fmt::format("  {:>3}  {:>16}  {:>16}  {:>12}  {}\n", "l", "estimate", "previous", "1 - margin", "converged");
  for (const auto& [l, e] : r.c_estimates)
    s += fmt::format("  {:>3}  {:>16}  {:>16}  {:>12}  {}\n", l, num(e.value), num(e.previous),
                     num(1.0 - r.margin), e.converged ? "yes" : "no");
  if (!r.operator_norms.empty()) {
    s += "\noperator norms on the Lorentz space\n";
    s += fmt::format("  {:>6}  {:>16}  {:>16}\n", "n", "|A_n|", "n (1 - margin)");
    for (const auto& [n, v] : r.operator_norms)
      s += fmt::format("  {:>6}  {:>16}  {:>16}\n", n, num(v), num(n * (1.0 - r.margin)));
  }
  if (r.branch == Branch::PowerBound)
    s += fmt::format("\nwitness n0 = {}, q = {}, C = {}  (|A_n| <= C n^q)\n", *r.witness_n0, num(*r.q), num(*r.C));
  if (!r.failing_condition.empty()) s += fmt::format("\nfailing condition: {}\n", r.failing_condition);
  if (r.kruglov) {
    const auto& k = *r.kruglov;
    s += fmt::format("\nkruglov series     {}  sup {} at t = 2^{}, N = {}\n",
                     k.finite ? "finite" : (k.inconclusive ? "inconclusive" : "divergent"), num(k.sup_value),
                     num(k.log2_t_argmax), k.n_used);
  }
  return s;
}

std::string classify_csv(const DichotomyReport& r) {
  std::string s = "quantity,index,value,previous,converged,margin\n";
  for (const auto& [k, e] : r.a_estimates)
    s += fmt::format("a,{},{},{},{},{}\n", k, num(e.value), num(e.previous), e.converged ? 1 : 0, num(r.margin));
  for (const auto& [l, e] : r.c_estimates)
    s += fmt::format("c,{},{},{},{},{}\n", l, num(e.value), num(e.previous), e.converged ? 1 : 0, num(r.margin));
  for (const auto& [n, v] : r.operator_norms) s += fmt::format("opnorm,{},{},,,\n", n, num(v));
  return s;
}

struct Outcome {
  std::string body;
  bool inconclusive = false;
};

Outcome run_classify(const CommandConfig& c) {
  ClassifyParams p;
  p.k_list = c.k_list;
  p.l_list = c.l_list;
  if (!c.ns.empty()) p.n_list = c.ns;
  p.margin = c.margin;
  p.grid = limit_grid(c);
  p.sup_options.limit_grid = p.grid;
  p.with_kruglov = c.kruglov;
  p.kruglov.max_terms = c.terms;
  p.kruglov.threshold = c.threshold;
  const DichotomyReport r = classify(generators::parse(c.psi), p);
  Outcome o{.body = {}, .inconclusive = r.inconclusive};
  if (c.format == Format::Json) o.body = to_json(r).dump(2) + "\n";
  else if (c.format == Format::Csv) o.body = classify_csv(r);
  else o.body = classify_text(r, p.grid);
  return o;
}

Outcome run_norm(const CommandConfig& c) {
  const SpaceSpec space = parse_space(c.space);
  const StepFunction f = c.indicator ? StepFunction::indicator(0.0, *c.indicator) : load_step_function(c.stepfn);
  const double v = norm(f, space);
  Outcome o;
  if (c.format == Format::Json) {
    Json j;
    j["space"] = to_string(space);
    j["function"] = to_json(f);
    j["value"] = v;
    o.body = j.dump(2) + "\n";
  } else if (c.format == Format::Csv) {
    o.body = fmt::format("space,value\n{},{}\n", to_string(space), num(v));
  } else {
    o.body = fmt::format("{}  norm = {}\n", to_string(space), num(v));
  }
  return o;
}

Outcome run_opnorm(const CommandConfig& c) {
  const ConcaveGenerator psi = generators::parse(c.psi);
  SupGOptions opt;
  opt.limit_grid = limit_grid(c);
  Outcome o;
  Json rows = Json::array();
  std::string csv = "n,norm,sup_g,interior,log2_u_argmax,limit,limit_converged\n";
  std::string text = fmt::format("operator norms of A_n on the Lorentz space of {}\n", psi.label());
  text += fmt::format("interior grid u = 2^-j, j in [0, {}], {} per unit; limit grid depth to {}\n",
                      num(opt.max_depth), opt.points_per_unit, num(opt.limit_grid.max_depth));
  text += fmt::format("{:>6}  {:>16}  {:>14}  {:>14}  {:>14}  {:>14}  {}\n", "n", "|A_n|", "sup g_n",
                      "interior", "log2 argmax", "limit u->0", "converged");
  for (int n : c.ns) {
    const SupG g = sup_g(psi, n, opt);
    o.inconclusive = o.inconclusive || !g.limit_converged;
    Json row;
    row["n"] = n;
    row["norm"] = n * g.value;
    row["sup_g"] = g.value;
    row["interior"] = g.interior;
    row["log2_u_argmax"] = g.log2_u_argmax;
    row["limit"] = g.limit;
    row["limit_converged"] = g.limit_converged;
    rows.push_back(row);
    csv += fmt::format("{},{},{},{},{},{},{}\n", n, num(n * g.value), num(g.value), num(g.interior),
                       num(g.log2_u_argmax), num(g.limit), g.limit_converged ? 1 : 0);
    text += fmt::format("{:>6}  {:>16}  {:>14}  {:>14}  {:>14}  {:>14}  {}\n", n, num(n * g.value), num(g.value),
                        num(g.interior), num(g.log2_u_argmax), num(g.limit), g.limit_converged ? "yes" : "no");
  }
  if (c.format == Format::Json) o.body = Json{{"generator", psi.label()}, {"rows", rows}}.dump(2) + "\n";
  else if (c.format == Format::Csv) o.body = csv;
  else o.body = text;
  return o;
}

Outcome run_growth(const CommandConfig& c) {
  GrowthRequest req{parse_space(c.space), c.ns};
  req.source = c.source == "mc" ? NormSource::MonteCarlo : NormSource::Exact;
  req.sampler = parse_sampler(c.sampler, c.seed);
  req.mc.trials = c.trials;
  req.mc.pieces = c.pieces;
  req.mc.threads = c.threads;
  req.burn_in = c.burn_in;
  const GrowthFit fit = growth_table(req);
  Outcome o{.body = {}, .inconclusive = fit.degenerate};
  if (c.format == Format::Json) {
    Json j;
    j["space"] = to_string(req.space);
    j["source"] = c.source;
    if (req.source == NormSource::MonteCarlo) {
      j["sampler"] = to_string(req.sampler.law);
      j["seed"] = c.seed;
      j["trials"] = c.trials;
    }
    j["fit"] = to_json(fit);
    j["gamma_iid_endpoint"] = fit.q > 0.0 && fit.q <= 1.0 ? Json(gamma_iid_endpoint(fit)) : Json(nullptr);
    o.body = j.dump(2) + "\n";
  } else if (c.format == Format::Csv) {
    o.body = to_csv(fit);
  } else {
    std::string s = fmt::format("growth of |sum of n terms| in {} ({} source)\n", to_string(req.space), c.source);
    s += fmt::format("{:>8}  {:>16}  {:>16}\n", "n", "value", "C n^q");
    for (const auto& [n, v] : fit.pairs)
      s += fmt::format("{:>8}  {:>16}  {:>16}\n", n, num(v), num(fit.C * std::pow(n, fit.q)));
    s += fmt::format("fit over n >= {} (burn-in {}): q = {}, C = {}, max relative residual {}{}\n",
                     fit.pairs[static_cast<std::size_t>(fit.burn_in)].first, fit.burn_in, num(fit.q), num(fit.C),
                     num(fit.residual), fit.degenerate ? "  (degenerate)" : "");
    if (fit.q > 0.0 && fit.q <= 1.0) s += fmt::format("endpoint 1/q = {}\n", num(gamma_iid_endpoint(fit)));
    o.body = s;
  }
  return o;
}

Outcome run_kruglov(const CommandConfig& c) {
  KruglovParams p;
  p.max_terms = c.terms;
  p.threshold = c.threshold;
  const ConcaveGenerator phi = generators::parse(c.psi);
  const KruglovVerdict v = kruglov_check(phi, p);
  Outcome o{.body = {}, .inconclusive = v.inconclusive};
  if (c.format == Format::Json) {
    Json j;
    j["generator"] = phi.label();
    j["threshold"] = p.threshold;
    j["verdict"] = to_json(v);
    o.body = j.dump(2) + "\n";
  } else if (c.format == Format::Csv) {
    o.body = fmt::format("finite,inconclusive,sup_value,N_used,log2_t_argmax,threshold\n{},{},{},{},{},{}\n",
                         v.finite ? 1 : 0, v.inconclusive ? 1 : 0, num(v.sup_value), v.n_used,
                         num(v.log2_t_argmax), num(p.threshold));
  } else {
    o.body = fmt::format(
        "kruglov series for {}: {}\n  sup over probed t = {} at t = 2^{}\n  terms used {}, divergence "
        "threshold {}, probe depths t = 2^-x for x in {{0, 1, 2, 4, ..., 2^20}}\n",
        phi.label(), v.finite ? "finite" : (v.inconclusive ? "inconclusive" : "divergent"), num(v.sup_value),
        num(v.log2_t_argmax), v.n_used, num(p.threshold));
  }
  return o;
}

Outcome run_mc(const CommandConfig& c) {
  const SamplerSpec sampler = parse_sampler(c.sampler, c.seed);
  const SpaceSpec space = parse_space(c.space);
  McOptions opt;
  opt.trials = c.trials;
  opt.pieces = c.pieces;
  opt.threads = c.threads;
  Outcome o;
  Json rows = Json::array();
  std::string csv = "n,value,std_error,trials\n";
  std::string text = fmt::format("Monte-Carlo norms of i.i.d. sums of {} in {} (seed {}, {} trials)\n",
                                 to_string(sampler.law), to_string(space), c.seed, c.trials);
  text += fmt::format("{:>8}  {:>16}  {:>14}\n", "n", "value", "std error");
  for (int n : c.ns) {
    const McEstimate e = mc_iid_sum_norm(sampler, n, space, opt);
    Json row = to_json(e);
    row["n"] = n;
    rows.push_back(row);
    csv += fmt::format("{},{},{},{}\n", n, num(e.value), num(e.std_error), e.trials);
    text += fmt::format("{:>8}  {:>16}  {:>14}\n", n, num(e.value), num(e.std_error));
  }
  if (c.format == Format::Json) {
    Json j;
    j["sampler"] = to_string(sampler.law);
    j["space"] = to_string(space);
    j["seed"] = c.seed;
    j["rows"] = rows;
    o.body = j.dump(2) + "\n";
  } else if (c.format == Format::Csv) {
    o.body = csv;
  } else {
    o.body = text;
  }
  return o;
}

void apply_experiment_config(CommandConfig& c) {
  std::ifstream in(c.config);
  if (!in) throw InvalidArgument("cannot open config '" + c.config + "'");
  const ExperimentConfig e = parse_experiment_config(in);
  c.space = e.space;
  c.sampler = e.sampler;
  c.source = e.source;
  if (!e.ns.empty()) c.ns = e.ns;
  c.trials = e.trials;
  c.pieces = e.pieces;
  c.seed = e.seed;
  c.burn_in = e.burn_in;
}

void validate(CommandConfig& c) {
  switch (c.subcommand) {
    case Subcommand::Classify:
      generators::parse(c.psi);
      if (c.k_list.empty() || c.l_list.empty()) throw InvalidArgument("--k and --l need at least one value");
      for (int k : c.k_list)
        if (k < 2) throw InvalidArgument("--k values must be >= 2");
      for (int l : c.l_list)
        if (l < 2) throw InvalidArgument("--l values must be >= 2");
      if (!(c.margin > 0.0 && c.margin < 1.0)) throw InvalidArgument("--margin must lie in (0, 1)");
      limit_grid(c).depths();
      break;
    case Subcommand::Norm:
      parse_space(c.space);
      if (c.indicator.has_value() == !c.stepfn.empty())
        throw InvalidArgument("norm needs exactly one of --indicator and --stepfn");
      if (c.indicator && !(*c.indicator > 0.0 && *c.indicator <= 1.0))
        throw InvalidArgument("--indicator must lie in (0, 1]");
      break;
    case Subcommand::Opnorm:
      generators::parse(c.psi);
      if (c.ns.empty()) throw InvalidArgument("opnorm needs --n or --ns");
      for (int n : c.ns)
        if (n < 1) throw InvalidArgument("--n values must be >= 1");
      limit_grid(c).depths();
      break;
    case Subcommand::Growth:
      if (!c.config.empty()) apply_experiment_config(c);
      parse_space(c.space);
      parse_sampler(c.sampler, c.seed);
      if (c.source != "exact" && c.source != "mc") throw InvalidArgument("unknown source token '" + c.source + "'");
      if (c.ns.size() < 4) throw InvalidArgument("growth needs at least 4 values in --ns");
      break;
    case Subcommand::Kruglov:
      generators::parse(c.psi);
      if (c.terms < 1) throw InvalidArgument("--terms must be >= 1");
      if (!(c.threshold > 0.0)) throw InvalidArgument("--threshold must be positive");
      break;
    case Subcommand::Mc:
      parse_space(c.space);
      parse_sampler(c.sampler, c.seed);
      if (c.ns.empty()) throw InvalidArgument("mc needs --n or --ns");
      for (int n : c.ns)
        if (n < 1) throw InvalidArgument("--n values must be >= 1");
      if (c.trials < 1000) throw InvalidArgument("--trials must be >= 1000");
      if (c.pieces < 256) throw InvalidArgument("--pieces must be >= 256");
      break;
  }
  if (c.threads < 0) throw InvalidArgument("--threads must be >= 0");
}

}  // namespace

std::optional<CommandConfig> parse_command_line(int argc, const char* const* argv, std::ostream& out) {
  CommandConfig c;
  c.seed = default_seed();
  std::string format = "text";
  std::string ns;
  std::string k_list;
  std::string l_list;
  std::optional<int> single_n;
  bool no_kruglov = false;

  CLI::App app{"rinorm: norms, operator growth and dichotomy checks in rearrangement-invariant spaces on [0, 1]"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--output,-o", c.output, "Write the report to this file");
  app.add_option("--threads", c.threads, "Worker threads for Monte-Carlo runs (0: all cores)");
  app.add_option("--seed", c.seed, "Master seed (default from RINORM_SEED, else 0)");

  auto* classify_cmd = app.add_subcommand("classify", "Decide which alternative a Lorentz generator falls in");
  classify_cmd->add_option("--psi", c.psi, "Generator DSL, e.g. power:0.5")->required();
  classify_cmd->add_option("--k", k_list, "Comma-separated k for limsup psi(ku)/psi(u)");
  classify_cmd->add_option("--l", l_list, "Comma-separated l for limsup psi(u^l)/psi(u)");
  classify_cmd->add_option("--ns", ns, "Candidate n for the witness n0, e.g. 2,4,8 or 2^1..2^6");
  classify_cmd->add_option("--margin", c.margin, "Decision margin");
  classify_cmd->add_option("--max-depth", c.max_depth, "Deepest limit probe, as log2(1/u)");
  classify_cmd->add_flag("--no-kruglov", no_kruglov, "Skip the Kruglov series check");
  classify_cmd->add_option("--terms", c.terms, "Kruglov series terms before the stabilization check");
  classify_cmd->add_option("--threshold", c.threshold, "Kruglov divergence threshold");

  auto* norm_cmd = app.add_subcommand("norm", "Norm of a step function");
  norm_cmd->add_option("--space", c.space, "Space DSL, e.g. lorentz:power:0.5")->required();
  norm_cmd->add_option("--indicator", c.indicator, "Indicator of (0, u]");
  norm_cmd->add_option("--stepfn", c.stepfn, "Step function file (.json or .csv)");

  auto* opnorm_cmd = app.add_subcommand("opnorm", "Operator norms of A_n on a Lorentz space");
  opnorm_cmd->add_option("--psi", c.psi, "Generator DSL")->required();
  opnorm_cmd->add_option("--n", single_n, "Single n");
  opnorm_cmd->add_option("--ns", ns, "List of n");
  opnorm_cmd->add_option("--max-depth", c.max_depth, "Deepest limit probe, as log2(1/u)");

  auto* growth_cmd = app.add_subcommand("growth", "Growth exponent of sums of n i.i.d. terms");
  growth_cmd->add_option("--space", c.space, "Space DSL");
  growth_cmd->add_option("--ns", ns, "List of n (at least 4, spanning two octaves)");
  growth_cmd->add_option("--source", c.source, "exact (Rademacher sums) or mc")->check(CLI::IsMember({"exact", "mc"}));
  growth_cmd->add_option("--sampler", c.sampler, "Sampler DSL for the mc source");
  growth_cmd->add_option("--trials", c.trials, "Monte-Carlo trials per n");
  growth_cmd->add_option("--pieces", c.pieces, "Rearrangement pieces");
  growth_cmd->add_option("--burn-in", c.burn_in, "Smallest n values excluded from the fit");
  growth_cmd->add_option("--config", c.config, "Flat key = value experiment file");

  auto* kruglov_cmd = app.add_subcommand("kruglov", "Kruglov series criterion for a Lorentz generator");
  kruglov_cmd->add_option("--psi", c.psi, "Generator DSL")->required();
  kruglov_cmd->add_option("--terms", c.terms, "Series terms before the stabilization check");
  kruglov_cmd->add_option("--threshold", c.threshold, "Divergence threshold");

  auto* mc_cmd = app.add_subcommand("mc", "Monte-Carlo norm of sums of n i.i.d. terms");
  mc_cmd->add_option("--space", c.space, "Space DSL")->required();
  mc_cmd->add_option("--sampler", c.sampler, "Sampler DSL");
  mc_cmd->add_option("--n", single_n, "Single n");
  mc_cmd->add_option("--ns", ns, "List of n");
  mc_cmd->add_option("--trials", c.trials, "Trials");
  mc_cmd->add_option("--pieces", c.pieces, "Rearrangement pieces");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
      return std::nullopt;
    }
    throw InvalidArgument(e.what());
  }

  if (classify_cmd->parsed()) c.subcommand = Subcommand::Classify;
  if (norm_cmd->parsed()) c.subcommand = Subcommand::Norm;
  if (opnorm_cmd->parsed()) c.subcommand = Subcommand::Opnorm;
  if (growth_cmd->parsed()) c.subcommand = Subcommand::Growth;
  if (kruglov_cmd->parsed()) c.subcommand = Subcommand::Kruglov;
  if (mc_cmd->parsed()) c.subcommand = Subcommand::Mc;

  c.format = format == "json" ? Format::Json : format == "csv" ? Format::Csv : Format::Text;
  c.kruglov = !no_kruglov;
  if (!ns.empty()) c.ns = parse_int_list(ns);
  if (single_n) c.ns.insert(c.ns.begin(), *single_n);
  if (!k_list.empty()) c.k_list = parse_int_list(k_list);
  if (!l_list.empty()) c.l_list = parse_int_list(l_list);
  if (growth_cmd->parsed() && c.config.empty() && c.space.empty())
    throw InvalidArgument("growth needs --space or --config");
  validate(c);
  return c;
}

int run(const CommandConfig& config, std::ostream& out, std::ostream& err) {
  try {
    Outcome o;
    switch (config.subcommand) {
      case Subcommand::Classify: o = run_classify(config); break;
      case Subcommand::Norm: o = run_norm(config); break;
      case Subcommand::Opnorm: o = run_opnorm(config); break;
      case Subcommand::Growth: o = run_growth(config); break;
      case Subcommand::Kruglov: o = run_kruglov(config); break;
      case Subcommand::Mc: o = run_mc(config); break;
    }
    if (config.output.empty()) {
      out << o.body;
    } else {
      std::ofstream file(config.output);
      if (!file) throw InvalidArgument("cannot write '" + config.output + "'");
      file << o.body;
    }
    return o.inconclusive ? 1 : 0;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.code() << ": " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.code() << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: internal: " << e.what() << "\n";
    return 1;
  }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::optional<CommandConfig> config;
  try {
    config = parse_command_line(argc, argv, out);
  } catch (const Error& e) {
    err << "error: " << e.code() << ": " << e.what() << "\n";
    return 2;
  }
  if (!config) return 0;
  return run(*config, out, err);
}

}  // namespace rinorm::cli
