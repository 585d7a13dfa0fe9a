// Copyright The rinorm Authors.
// SPDX-License-Identifier: Apache-2.0

#include "rinorm/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "rinorm/generators.hpp"
#include "rinorm/numeric.hpp"

namespace rinorm {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

template <class Int>
Int parse_integer(std::string_view token, std::string_view context) {
  token = trim(token);
  Int x{};
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), x);
  if (token.empty() || ec != std::errc() || ptr != token.data() + token.size())
    throw InvalidArgument("bad integer '" + std::string(token) + "' in " + std::string(context));
  return x;
}

int parse_power_of_two(std::string_view token) {
  token = trim(token);
  if (token.substr(0, 2) != "2^") throw InvalidArgument("range bound '" + std::string(token) + "' is not 2^k");
  const int e = parse_integer<int>(token.substr(2), "range bound");
  if (e < 0 || e > 30) throw InvalidArgument("range exponent out of [0, 30]");
  return 1 << e;
}

double mean(std::span<const double> x) {
  CompensatedSum<> s;
  for (double v : x) s += v;
  return s.value() / static_cast<double>(x.size());
}

}  // namespace

DecreasingProfile rademacher_sum_profile(int n) {
  if (n < 1 || n > (1 << 20)) throw InvalidArgument("exact Rademacher sums need 1 <= n <= 2^20");
  std::vector<double> values;
  std::vector<double> log_masses;
  for (int j = 0; n - 2 * j > 0; ++j) {
    values.push_back(n - 2 * j);
    log_masses.push_back(kLn2 * (1 - n) + log_binomial(n, j));
  }
  return DecreasingProfile::from_atoms(values, log_masses);
}

double rademacher_sum_norm(int n, const SpaceSpec& space) { return norm(rademacher_sum_profile(n), space); }

SelfSimilarity gaussian_selfsimilarity(int n, int grid_size) {
  if (n < 1) throw InvalidArgument("self-similarity check needs n >= 1");
  if (grid_size < 1024)
    throw InvalidArgument("grid_size must be >= 1024 to resolve the Gaussian tail");
  const ConcaveGenerator psi = generators::gauss();
  constexpr int kUnits = 2048;
  const auto cells = static_cast<std::size_t>(grid_size);

  std::vector<double> atom(cells);
  double prev = 0.0;
  for (std::size_t i = 0; i < cells; ++i) {
    const double next = psi(static_cast<double>(i + 1) / grid_size);
    atom[i] = (next - prev) * grid_size;
    prev = next;
  }
  const double h = atom.front() / kUnits;

  const std::size_t width = 2 * kUnits + 1;
  std::vector<double> single(width, 0.0);
  const double half_mass = 0.5 / grid_size;
  for (double a : atom) {
    const double x = std::min(a / h, static_cast<double>(kUnits));
    const auto lo = static_cast<std::size_t>(std::floor(x));
    const double frac = x - static_cast<double>(lo);
    for (int sign : {-1, 1}) {
      const auto at = [&](std::size_t k) { return static_cast<std::size_t>(kUnits + sign * static_cast<long>(k)); };
      single[at(lo)] += half_mass * (1.0 - frac);
      if (frac > 0.0) single[at(lo + 1)] += half_mass * frac;
    }
  }

  std::vector<double> law = single;
  for (int k = 1; k < n; ++k) {
    std::vector<double> next(law.size() + width - 1, 0.0);
    for (std::size_t i = 0; i < law.size(); ++i) {
      const double p = law[i];
      if (p == 0.0) continue;
      double* out = next.data() + i;
      for (std::size_t j = 0; j < width; ++j) out[j] += p * single[j];
    }
    law = std::move(next);
  }

  auto profile_of = [&](const std::vector<double>& p) {
    const auto center = static_cast<long>(p.size() / 2);
    std::vector<double> values;
    std::vector<double> log_masses;
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (!(p[i] > 0.0)) continue;
      values.push_back(static_cast<double>(static_cast<long>(i) - center) * h);
      log_masses.push_back(std::log(p[i]));
    }
    return DecreasingProfile::from_atoms(values, log_masses);
  };

  SelfSimilarity out;
  out.lattice_step = h;
  out.single_norm = marcinkiewicz_norm(profile_of(single), psi);
  out.sum_norm = n == 1 ? out.single_norm : marcinkiewicz_norm(profile_of(law), psi);
  out.ratio = out.sum_norm / out.single_norm;
  return out;
}

double gaussian_selfsimilarity_check(int n, int grid_size) {
  return gaussian_selfsimilarity(n, grid_size).ratio;
}

std::vector<double> iid_sums(const SamplerSpec& sampler, int n, std::int64_t trials, int threads) {
  if (n < 1) throw InvalidArgument("i.i.d. sums need n >= 1");
  if (const auto* c = std::get_if<CustomLaw>(&sampler.law)) check_symmetric(*c);
  std::vector<double> out(static_cast<std::size_t>(trials));
  for_each_chunk(trials, sampler.seed, threads, [&](Rng& rng, std::int64_t first, std::int64_t count) {
    for (std::int64_t t = first; t < first + count; ++t) {
      double s = 0.0;
      for (int k = 0; k < n; ++k) s += draw(sampler.law, rng);
      out[static_cast<std::size_t>(t)] = s;
    }
  });
  return out;
}

McEstimate mc_iid_sum_norm(const SamplerSpec& sampler, int n, const SpaceSpec& space,
                           const McOptions& options) {
  if (options.trials < 1000) throw InvalidArgument("Monte-Carlo norms need at least 1000 trials");
  if (options.pieces < 256) throw InvalidArgument("Monte-Carlo norms need at least 256 pieces");
  if (options.batches < 2) throw InvalidArgument("Monte-Carlo norms need at least 2 batches");
  const std::vector<double> sums = iid_sums(sampler, n, options.trials, options.threads);

  auto empirical_norm = [&](std::span<const double> part) {
    const std::size_t n_part = part.size();
    const std::size_t pieces = (options.pieces + n_part - 1) / n_part * n_part;
    return norm(quantile_from_samples(part, pieces), space);
  };
  McEstimate est;
  est.trials = options.trials;
  est.value = empirical_norm(sums);

  const auto b = static_cast<std::size_t>(options.batches);
  const std::size_t size = sums.size() / b;
  std::vector<double> batch_norms;
  for (std::size_t i = 0; i < b; ++i) {
    const std::span<const double> part(sums.data() + i * size, size);
    batch_norms.push_back(empirical_norm(part));
  }
  const double m = mean(batch_norms);
  CompensatedSum<> ss;
  for (double x : batch_norms) ss += (x - m) * (x - m);
  est.std_error = std::sqrt(ss.value() / static_cast<double>(b - 1) / static_cast<double>(b));
  return est;
}

GrowthFit fit_growth(std::vector<std::pair<int, double>> pairs, int burn_in) {
  if (burn_in < 0) throw InvalidArgument("burn-in must be >= 0");
  for (std::size_t i = 1; i < pairs.size(); ++i)
    if (!(pairs[i].first > pairs[i - 1].first)) throw InvalidArgument("growth pairs must be strictly increasing in n");
  if (pairs.size() < static_cast<std::size_t>(burn_in) + 2)
    throw InvalidArgument("growth fit needs at least two pairs after burn-in");

  GrowthFit fit;
  fit.pairs = std::move(pairs);
  fit.burn_in = burn_in;
  const auto fitted = std::span(fit.pairs).subspan(static_cast<std::size_t>(burn_in));
  for (const auto& [n, v] : fitted) {
    if (!(v > 0.0) || !std::isfinite(v) || n < 1) {
      fit.degenerate = true;
      fit.q = fit.C = fit.residual = std::numeric_limits<double>::quiet_NaN();
      return fit;
    }
  }
  for (std::size_t i = 1; i < fitted.size(); ++i)
    if (fitted[i].second < fitted[i - 1].second * (1.0 - 1e-2)) fit.degenerate = true;

  std::vector<double> x;
  std::vector<double> y;
  for (const auto& [n, v] : fitted) {
    x.push_back(std::log(static_cast<double>(n)));
    y.push_back(std::log(v));
  }
  const double mx = mean(x);
  const double my = mean(y);
  CompensatedSum<> sxy;
  CompensatedSum<> sxx;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  fit.q = sxy.value() / sxx.value();
  fit.C = std::exp(my - fit.q * mx);
  for (const auto& [n, v] : fitted)
    fit.residual = std::max(fit.residual, std::abs(fit.C * std::pow(static_cast<double>(n), fit.q) / v - 1.0));
  return fit;
}

GrowthFit growth_table(const GrowthRequest& request) {
  std::vector<int> ns = request.ns;
  std::sort(ns.begin(), ns.end());
  if (ns.size() < 4) throw InvalidArgument("growth table needs at least 4 values of n");
  if (ns.front() < 1 || ns.back() < 4 * ns.front())
    throw InvalidArgument("growth table n values must span at least two octaves");
  std::vector<std::pair<int, double>> pairs;
  for (int n : ns) {
    double v = 0.0;
    if (request.source == NormSource::Exact) {
      v = rademacher_sum_norm(n, request.space);
    } else {
      SamplerSpec s = request.sampler;
      s.seed = stream_seed(request.sampler.seed, static_cast<std::uint64_t>(n));
      v = mc_iid_sum_norm(s, n, request.space, request.mc).value;
    }
    pairs.emplace_back(n, v);
  }
  return fit_growth(std::move(pairs), request.burn_in);
}

double gamma_iid_endpoint(const GrowthFit& fit) {
  if (!(fit.q > 0.0 && fit.q <= 1.0)) throw InvalidArgument("endpoint needs a fitted q in (0, 1]");
  return 1.0 / fit.q;
}

double disjoint_sum_norm(std::span<const StepFunction> blocks, const SpaceSpec& space) {
  if (blocks.empty()) throw InvalidArgument("disjoint sum needs at least one block");
  StepFunction total = blocks.front();
  double support = blocks.front().measure_above(0.0);
  for (const auto& b : blocks.subspan(1)) {
    total = total + b;
    support += b.measure_above(0.0);
  }
  if (std::abs(total.measure_above(0.0) - support) > 1e-12)
    throw InvalidArgument("disjoint sum blocks have overlapping supports");
  return norm(total, space);
}

std::vector<double> kruglov_sampler(const SamplerSpec& sampler, std::int64_t trials, int threads) {
  if (trials < 1) throw InvalidArgument("kruglov sampler needs trials >= 1");
  if (const auto* c = std::get_if<CustomLaw>(&sampler.law)) check_symmetric(*c);
  std::vector<double> out(static_cast<std::size_t>(trials));
  for_each_chunk(trials, sampler.seed, threads, [&](Rng& rng, std::int64_t first, std::int64_t count) {
    for (std::int64_t t = first; t < first + count; ++t) {
      const int terms = rng.poisson1();
      double s = 0.0;
      for (int k = 0; k < terms; ++k) s += draw(sampler.law, rng);
      out[static_cast<std::size_t>(t)] = s;
    }
  });
  return out;
}

std::vector<int> parse_int_list(std::string_view text) {
  text = trim(text);
  std::vector<int> out;
  if (const auto dots = text.find(".."); dots != std::string_view::npos) {
    const int lo = parse_power_of_two(text.substr(0, dots));
    const int hi = parse_power_of_two(text.substr(dots + 2));
    if (hi < lo) throw InvalidArgument("empty range '" + std::string(text) + "'");
    for (int n = lo; n <= hi; n *= 2) out.push_back(n);
    return out;
  }
  while (!text.empty()) {
    const auto comma = text.find(',');
    out.push_back(parse_integer<int>(text.substr(0, comma), "integer list"));
    text = comma == std::string_view::npos ? std::string_view() : text.substr(comma + 1);
  }
  if (out.empty()) throw InvalidArgument("empty integer list");
  return out;
}

ExperimentConfig parse_experiment_config(std::istream& in) {
  ExperimentConfig cfg;
  std::string line;
  while (std::getline(in, line)) {
    std::string_view l = trim(line);
    if (l.empty() || l.front() == '#') continue;
    const auto eq = l.find('=');
    if (eq == std::string_view::npos) throw InvalidArgument("config line without '=': '" + std::string(l) + "'");
    const std::string_view key = trim(l.substr(0, eq));
    const std::string value(trim(l.substr(eq + 1)));
    if (key == "space") {
      parse_space(value);
      cfg.space = value;
    } else if (key == "sampler") {
      parse_sampler(value);
      cfg.sampler = value;
    } else if (key == "source") {
      if (value != "exact" && value != "mc") throw InvalidArgument("unknown source token '" + value + "'");
      cfg.source = value;
    } else if (key == "ns") {
      cfg.ns = parse_int_list(value);
    } else if (key == "trials") {
      cfg.trials = parse_integer<std::int64_t>(value, "trials");
    } else if (key == "pieces" || key == "m") {
      cfg.pieces = parse_integer<std::size_t>(value, "pieces");
    } else if (key == "seed") {
      cfg.seed = parse_integer<std::uint64_t>(value, "seed");
    } else if (key == "burn_in") {
      cfg.burn_in = parse_integer<int>(value, "burn_in");
    } else {
      throw InvalidArgument("unknown config key '" + std::string(key) + "'");
    }
  }
  return cfg;
}

}  // namespace rinorm
