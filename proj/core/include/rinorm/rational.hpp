// Copyright The rinorm Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace rinorm {

/// Arbitrary-precision rational used by the exact arithmetic backend.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }
inline double to_double(double x) { return x; }

/// Parses "p/q" or an integer literal.
Rational parse_rational(std::string_view text);

/// Formats as "p/q" (or "p" when the denominator is one).
std::string to_string(const Rational& r);

/// 2^e as an exact rational; e may be negative.
Rational pow2(int e);

/// r^e for e >= 0.
Rational pow(const Rational& r, int e);

/// C(n, k) exactly.
BigInt binomial_exact(int n, int k);

}  // namespace rinorm
