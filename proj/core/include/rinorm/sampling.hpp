// Copyright The rinorm Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace rinorm {

/// ±1 with probability u/2 each, 0 otherwise.
struct SignedIndicator {
  double u;
};
/// ±1 with probability 1/2 each.
struct Rademacher {};
/// Centred Gaussian with variance 1/2, so |X| has quantile function erfc^{-1}.
struct GaussianLaw {};
/// Uniform over a finite table of values; the table must be symmetric.
struct CustomLaw {
  std::vector<double> values;
};

using Law = std::variant<SignedIndicator, Rademacher, GaussianLaw, CustomLaw>;

struct SamplerSpec {
  Law law;
  std::uint64_t seed = 0;
};

/// "rademacher", "indicator:<u>", "gauss", "custom:<path>" (one value per
/// line or comma separated).
SamplerSpec parse_sampler(std::string_view dsl, std::uint64_t seed = 0);
std::string to_string(const Law& law);

/// Throws unless the law is symmetric about 0.
void check_symmetric(const CustomLaw& law, double tolerance = 1e-12);

/// Seed of the index-th independent stream derived from a master seed.
std::uint64_t stream_seed(std::uint64_t master, std::uint64_t index);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on (0, 1] with 53 random bits.
  double uniform() { return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53; }
  double sign() { return (engine_() >> 63) ? 1.0 : -1.0; }
  /// Poisson(1) by Knuth's product method.
  int poisson1();

 private:
  std::mt19937_64 engine_;
};

double draw(const Law& law, Rng& rng);

inline constexpr std::int64_t kChunkTrials = 4096;

/// Runs body(rng, first, count) over trials split into chunks of
/// kChunkTrials, chunk i drawing from stream_seed(seed, i). Results are
/// identical for any thread count; threads <= 0 means hardware concurrency.
void for_each_chunk(std::int64_t trials, std::uint64_t seed, int threads,
                    const std::function<void(Rng&, std::int64_t first, std::int64_t count)>& body);

}  // namespace rinorm
