// Copyright The rinorm Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace rinorm::cli {

enum class Subcommand { Classify, Norm, Opnorm, Growth, Kruglov, Mc };
enum class Format { Json, Csv, Text };

struct CommandConfig {
  Subcommand subcommand = Subcommand::Classify;
  Format format = Format::Text;
  std::string output;  // empty: standard output

  std::string psi;
  std::string space;
  std::string sampler = "rademacher";
  std::string source = "exact";
  std::string stepfn;      // path to a JSON or CSV step function
  std::string config;      // flat key = value experiment file
  std::optional<double> indicator;

  std::vector<int> ns;
  std::vector<int> k_list{2, 3, 4};
  std::vector<int> l_list{2, 3};
  double margin = 1e-3;
  double max_depth = 1048576.0;  // limit grid depth, log2(1/u)
  bool kruglov = true;
  std::int64_t terms = 1'000'000;
  double threshold = 1e3;

  std::int64_t trials = 100'000;
  std::size_t pieces = 4096;
  std::uint64_t seed = 0;
  int burn_in = 2;
  int threads = 0;
};

/// Parses argv into a validated config. Throws rinorm::InvalidArgument on
/// bad input; returns nullopt after printing help.
std::optional<CommandConfig> parse_command_line(int argc, const char* const* argv, std::ostream& out);

/// Runs a validated config: 0 success, 1 inconclusive or numerical failure,
/// 2 invalid input. Errors are one line "error: <code>: <message>" on err.
int run(const CommandConfig& config, std::ostream& out, std::ostream& err);

/// parse_command_line followed by run, with the same exit codes.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rinorm::cli
