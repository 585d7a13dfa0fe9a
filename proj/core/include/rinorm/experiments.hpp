// Copyright The rinorm Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <istream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rinorm/norms.hpp"
#include "rinorm/sampling.hpp"
#include "rinorm/stepfn.hpp"

namespace rinorm {

/// Rearranged law of |W_n|, W_n a sum of n independent symmetric signs.
DecreasingProfile rademacher_sum_profile(int n);

/// Norm of |W_n| in the given space, computed from the exact law.
double rademacher_sum_norm(int n, const SpaceSpec& space);

struct SelfSimilarity {
  double ratio = 0.0;        // ‖sum‖ / ‖single‖ in M(gauss)
  double single_norm = 0.0;
  double sum_norm = 0.0;
  double lattice_step = 0.0;
};

/// Sums n independent symmetric variables whose |·| has quantile function
/// erfc^{-1}, discretized to grid_size equal-probability cells, by explicit
/// convolution on a lattice; compares Marcinkiewicz norms for the gauss
/// generator. The ratio should be √n.
SelfSimilarity gaussian_selfsimilarity(int n, int grid_size = 1 << 16);
double gaussian_selfsimilarity_check(int n, int grid_size = 1 << 16);

struct McOptions {
  std::int64_t trials = 100'000;
  std::size_t pieces = 4096;
  int batches = 16;
  int threads = 0;
};

struct McEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::int64_t trials = 0;
};

/// Realizations of Σ_{k<=n} ξ_k for i.i.d. ξ_k from the sampler's law.
std::vector<double> iid_sums(const SamplerSpec& sampler, int n, std::int64_t trials, int threads = 0);

/// Monte-Carlo norm of Σ_{k<=n} ξ_k via the empirical rearrangement.
/// `pieces` is rounded up to a multiple of the sample count, so the step
/// function is exactly the rearranged empirical law. The standard error
/// comes from batch means.
McEstimate mc_iid_sum_norm(const SamplerSpec& sampler, int n, const SpaceSpec& space,
                           const McOptions& options = {});

struct GrowthFit {
  std::vector<std::pair<int, double>> pairs;
  double q = 0.0;
  double C = 0.0;
  double residual = 0.0;  // max |C n^q / value - 1| over the fitted pairs
  int burn_in = 2;
  bool degenerate = false;
};

/// Least squares of log value on log n after dropping the burn_in smallest n.
GrowthFit fit_growth(std::vector<std::pair<int, double>> pairs, int burn_in = 2);

enum class NormSource { Exact, MonteCarlo };

struct GrowthRequest {
  SpaceSpec space;
  std::vector<int> ns;
  NormSource source = NormSource::Exact;
  SamplerSpec sampler{Rademacher{}, 0};
  McOptions mc{};
  int burn_in = 2;
};

/// The exact source evaluates Rademacher sums; the Monte-Carlo source uses
/// the request's sampler.
GrowthFit growth_table(const GrowthRequest& request);

/// 1/q.
double gamma_iid_endpoint(const GrowthFit& fit);

/// Norm of the sum of blocks with pairwise disjoint supports.
double disjoint_sum_norm(std::span<const StepFunction> blocks, const SpaceSpec& space);

/// Draws of π(ξ) = Σ_{i<=N} ξ_i with N ~ Poisson(1) independent of the ξ_i.
std::vector<double> kruglov_sampler(const SamplerSpec& sampler, std::int64_t trials, int threads = 0);

/// Flat "key = value" experiment description.
struct ExperimentConfig {
  std::string space = "marcinkiewicz:logpow:2";
  std::string sampler = "rademacher";
  std::string source = "exact";
  std::vector<int> ns;
  std::int64_t trials = 100'000;
  std::size_t pieces = 4096;
  std::uint64_t seed = 0;
  int burn_in = 2;
};

ExperimentConfig parse_experiment_config(std::istream& in);

/// Parses "16,32,64" or a power-of-two range "2^4..2^14".
std::vector<int> parse_int_list(std::string_view text);

}  // namespace rinorm
