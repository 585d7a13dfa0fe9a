// Copyright The rinorm Authors.
// SPDX-License-Identifier: Apache-2.0

#include "rinorm/sampling.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <thread>

#include "rinorm/generators.hpp"
#include "rinorm/numeric.hpp"

namespace rinorm {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

CustomLaw read_custom_law(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open custom law '" + path + "'");
  CustomLaw law;
  std::string line;
  while (std::getline(in, line)) {
    std::string_view rest = line;
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      const std::string_view field = rest.substr(0, comma);
      if (field.find_first_not_of(" \t\r") != std::string_view::npos)
        law.values.push_back(parse_double(field, path));
      rest = comma == std::string_view::npos ? std::string_view() : rest.substr(comma + 1);
    }
  }
  if (law.values.empty()) throw InvalidArgument("custom law '" + path + "' has no values");
  return law;
}

}  // namespace

std::uint64_t stream_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(splitmix64(master) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

int Rng::poisson1() {
  const double limit = std::exp(-1.0);
  int k = 0;
  double prod = uniform();
  while (prod > limit) {
    ++k;
    prod *= uniform();
  }
  return k;
}

void check_symmetric(const CustomLaw& law, double tolerance) {
  std::vector<double> v = law.values;
  std::sort(v.begin(), v.end());
  for (std::size_t i = 0, j = v.size() - 1; i < v.size(); ++i, --j)
    if (std::abs(v[i] + v[j]) > tolerance * std::max(1.0, std::abs(v[i])))
      throw InvalidArgument("custom law is not symmetric about 0");
}

SamplerSpec parse_sampler(std::string_view dsl, std::uint64_t seed) {
  const auto colon = dsl.find(':');
  const std::string_view head = dsl.substr(0, colon);
  const std::string_view arg = colon == std::string_view::npos ? std::string_view() : dsl.substr(colon + 1);
  if (head == "rademacher" && colon == std::string_view::npos) return {Rademacher{}, seed};
  if (head == "gauss" && colon == std::string_view::npos) return {GaussianLaw{}, seed};
  if (head == "indicator") {
    const double u = parse_double(arg, "indicator sampler");
    if (!(u > 0.0 && u <= 1.0)) throw InvalidArgument("indicator sampler needs u in (0, 1]");
    return {SignedIndicator{u}, seed};
  }
  if (head == "custom") {
    if (arg.empty()) throw InvalidArgument("custom sampler needs a path");
    CustomLaw law = read_custom_law(std::string(arg));
    check_symmetric(law);
    return {std::move(law), seed};
  }
  throw InvalidArgument("unknown sampler token '" + std::string(head) + "'");
}

std::string to_string(const Law& law) {
  struct {
    std::string operator()(const SignedIndicator& l) const { return "indicator:" + format_double(l.u); }
    std::string operator()(const Rademacher&) const { return "rademacher"; }
    std::string operator()(const GaussianLaw&) const { return "gauss"; }
    std::string operator()(const CustomLaw& l) const {
      return "custom[" + std::to_string(l.values.size()) + "]";
    }
  } visitor;
  return std::visit(visitor, law);
}

double draw(const Law& law, Rng& rng) {
  struct {
    Rng& rng;
    double operator()(const SignedIndicator& l) const {
      const double s = rng.sign();
      return rng.uniform() <= l.u ? s : 0.0;
    }
    double operator()(const Rademacher&) const { return rng.sign(); }
    double operator()(const GaussianLaw&) const {
      const double s = rng.sign();
      return s * gauss_quantile(rng.uniform());
    }
    double operator()(const CustomLaw& l) const {
      const double x = std::ceil(rng.uniform() * static_cast<double>(l.values.size()));
      return l.values[static_cast<std::size_t>(x) - 1];
    }
  } visitor{rng};
  return std::visit(visitor, law);
}

void for_each_chunk(std::int64_t trials, std::uint64_t seed, int threads,
                    const std::function<void(Rng&, std::int64_t, std::int64_t)>& body) {
  if (trials < 0) throw InvalidArgument("trial count must be >= 0");
  const std::int64_t chunks = (trials + kChunkTrials - 1) / kChunkTrials;
  auto run = [&](std::int64_t c) {
    Rng rng(stream_seed(seed, static_cast<std::uint64_t>(c)));
    const std::int64_t first = c * kChunkTrials;
    body(rng, first, std::min(kChunkTrials, trials - first));
  };
  if (threads <= 0) threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  threads = static_cast<int>(std::min<std::int64_t>(threads, chunks));
  if (threads <= 1) {
    for (std::int64_t c = 0; c < chunks; ++c) run(c);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::exception_ptr failure;
  std::atomic<bool> failed{false};
  std::vector<std::jthread> pool;
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::int64_t c = next++; c < chunks && !failed; c = next++) {
        try {
          run(c);
        } catch (...) {
          if (!failed.exchange(true)) failure = std::current_exception();
        }
      }
    });
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace rinorm
