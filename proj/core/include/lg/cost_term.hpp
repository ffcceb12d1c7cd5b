#pragma once

#include <string>

#include "lg/rational.hpp"

namespace lg {

/// Exponents of r = n^x, s = n^-t and lambda = n^y, for reducing a monomial to a
/// single power of n.
struct ExponentPoint {
  Rational x;
  Rational t;
  Rational y;
};

/// Monomial c * n^a * r^b * s^g * lambda^d with exact exponents.
struct CostTerm {
  double coeff = 1.0;
  Rational n_exp;
  Rational r_exp;
  Rational s_exp;
  Rational lambda_exp;

  static CostTerm one() { return {}; }
  static CostTerm n(const Rational& e = 1) { return {1.0, e, 0, 0, 0}; }
  static CostTerm r(const Rational& e = 1) { return {1.0, 0, e, 0, 0}; }
  static CostTerm s(const Rational& e = 1) { return {1.0, 0, 0, e, 0}; }
  static CostTerm lambda(const Rational& e = 1) { return {1.0, 0, 0, 0, e}; }
  /// (n/r)^e
  static CostTerm n_over_r(const Rational& e) { return {1.0, e, -e, 0, 0}; }

  CostTerm pow(const Rational& e) const;
  CostTerm sqrt() const { return pow(Rational(1, 2)); }

  double evaluate(double n, double r, double s, double lambda = 1.0) const;
  double log_evaluate(double n, double r, double s, double lambda = 1.0) const;

  /// Exponent of n after substituting the point; the coefficient is ignored.
  Rational exponent_at(const ExponentPoint& p) const;

  bool depends_on_lambda() const { return lambda_exp != 0; }

  /// "s*r^2", "n^(1/2)*r^(2/3)", "1", ... (coefficient shown only when != 1).
  std::string to_string() const;

  friend bool operator==(const CostTerm&, const CostTerm&) = default;
};

CostTerm operator*(const CostTerm& a, const CostTerm& b);
CostTerm operator/(const CostTerm& a, const CostTerm& b);

}  // namespace lg
