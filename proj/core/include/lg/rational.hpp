#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace lg {

/// Exact rational number. All exponent algebra and exact-mode learning-graph
/// arithmetic runs on this type.
using Rational = mpq_class;

Rational make_rational(std::int64_t num, std::int64_t den = 1);

/// "p/q", or "p" when the denominator is one.
std::string to_string(const Rational& q);

/// Accepts "p", "p/q" and finite decimals such as "0.125" or "1e-3".
Rational parse_rational(std::string_view text);

double to_double(const Rational& q);

/// Returns the rational square root when `q` is the square of a rational.
std::optional<Rational> exact_sqrt(const Rational& q);

Rational pow_int(const Rational& base, int exponent);

inline Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

}  // namespace lg
