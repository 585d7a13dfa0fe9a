// Copyright The rinorm Authors.
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cctype>
#include <charconv>
#include <string>

#include "rinorm/numeric.hpp"
#include "rinorm/rational.hpp"

namespace rinorm {

double log_binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return kNegInf;
  if (n <= 64) return std::log(binomial(n, k));
  return std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(k) + 1.0) -
         std::lgamma(static_cast<double>(n - k) + 1.0);
}

double binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  if (n <= 64) {
    // Multiplicative formula stays integral at every step and below 2^64 * k.
    unsigned __int128 acc = 1;
    for (std::int64_t i = 1; i <= k; ++i) acc = acc * static_cast<unsigned>(n - k + i) / i;
    return static_cast<double>(acc);
  }
  return std::exp(log_binomial(n, k));
}

double parse_double(std::string_view token, std::string_view context) {
  while (!token.empty() && std::isspace(static_cast<unsigned char>(token.front()))) token.remove_prefix(1);
  while (!token.empty() && std::isspace(static_cast<unsigned char>(token.back()))) token.remove_suffix(1);
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), x);
  if (token.empty() || ec != std::errc() || ptr != token.data() + token.size())
    throw InvalidArgument("bad number '" + std::string(token) + "' in " + std::string(context));
  return x;
}

std::string format_double(double x) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

Rational parse_rational(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  const auto slash = text.find('/');
  try {
    if (slash == std::string_view::npos) return Rational(BigInt(std::string(text)));
    BigInt num(std::string(trim(text.substr(0, slash))));
    BigInt den(std::string(trim(text.substr(slash + 1))));
    if (den == 0) throw InvalidArgument("zero denominator in rational '" + std::string(text) + "'");
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    throw InvalidArgument("cannot parse rational '" + std::string(text) + "'");
  }
}

std::string to_string(const Rational& r) {
  const BigInt num = boost::multiprecision::numerator(r);
  const BigInt den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Rational pow2(int e) {
  BigInt p = 1;
  p <<= static_cast<unsigned>(e < 0 ? -e : e);
  return e < 0 ? Rational(BigInt(1), p) : Rational(p);
}

Rational pow(const Rational& r, int e) {
  Rational acc = 1;
  Rational base = r;
  while (e > 0) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

BigInt binomial_exact(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  BigInt acc = 1;
  for (int i = 1; i <= k; ++i) acc = acc * (n - k + i) / i;
  return acc;
}

}  // namespace rinorm
