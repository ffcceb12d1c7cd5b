#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <type_traits>

#include "lg/errors.hpp"
#include "lg/radical.hpp"
#include "lg/rational.hpp"

namespace lg {

/// Arithmetic policy for the scalar types a learning graph can be instantiated with.
/// double runs with a relative tolerance; Rational and RadicalSum compare exactly.
template <typename T>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  using sqrt_type = double;
  static constexpr bool exact = false;
  static double from_rational(const Rational& q) { return q.get_d(); }
  static double to_double(double v) { return v; }
  static sqrt_type sqrt(double v) { return std::sqrt(v); }
  static bool equal(double a, double b, double rel_tol) {
    return std::abs(a - b) <= rel_tol * std::max({1.0, std::abs(a), std::abs(b)});
  }
  static std::string to_string(double v) { return std::to_string(v); }
};

template <>
struct ScalarTraits<Rational> {
  using sqrt_type = RadicalSum;
  static constexpr bool exact = true;
  static Rational from_rational(const Rational& q) { return q; }
  static double to_double(const Rational& v) { return v.get_d(); }
  static sqrt_type sqrt(const Rational& v) { return RadicalSum::sqrt_of(v); }
  static bool equal(const Rational& a, const Rational& b, double /*rel_tol*/) { return a == b; }
  static std::string to_string(const Rational& v) { return lg::to_string(v); }
};

template <>
struct ScalarTraits<RadicalSum> {
  using sqrt_type = RadicalSum;  // only defined for rational-valued arguments
  static constexpr bool exact = true;
  static RadicalSum from_rational(const Rational& q) { return RadicalSum(q); }
  static double to_double(const RadicalSum& v) { return v.to_double(); }
  static sqrt_type sqrt(const RadicalSum& v);
  static bool equal(const RadicalSum& a, const RadicalSum& b, double /*rel_tol*/) {
    return a == b;
  }
  static std::string to_string(const RadicalSum& v) { return v.to_string(); }
};

inline RadicalSum ScalarTraits<RadicalSum>::sqrt(const RadicalSum& v) {
  if (!v.is_rational()) throw Error("sqrt of an irrational RadicalSum is not supported");
  return RadicalSum::sqrt_of(v.is_zero() ? Rational(0) : v.terms().front().coeff);
}

/// Converts between scalar types (double <- any, exact <- Rational).
template <typename To, typename From>
To scalar_cast(const From& v) {
  if constexpr (std::is_same_v<To, From>) {
    return v;
  } else if constexpr (std::is_same_v<To, double>) {
    return ScalarTraits<From>::to_double(v);
  } else if constexpr (std::is_same_v<From, Rational>) {
    return ScalarTraits<To>::from_rational(v);
  } else {
    static_assert(std::is_same_v<To, void>, "unsupported scalar conversion");
  }
}

}  // namespace lg
