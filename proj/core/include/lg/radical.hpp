#pragma once

#include <string>
#include <vector>

#include "lg/rational.hpp"

namespace lg {

/// Exact element of Q(sqrt(a), sqrt(b), ...): a finite sum c_1 sqrt(m_1) + ... with
/// rational c_i and positive integer radicands m_i kept in pairwise distinct square
/// classes. Since such square roots are linearly independent over Q, the value is
/// zero iff every coefficient is zero, and the sign of a nonzero value is settled by
/// evaluation at escalating precision.
///
/// Closed under +, -, *. Division is only defined by single-term values, which is all
/// that stage rescaling by sqrt(C1/C0) ever needs.
class RadicalSum {
 public:
  struct Term {
    Rational coeff;
    mpz_class radicand;  // >= 1
  };

  RadicalSum() = default;
  RadicalSum(const Rational& q);  // NOLINT(google-explicit-constructor)
  RadicalSum(long v) : RadicalSum(Rational(v)) {}  // NOLINT(google-explicit-constructor)

  /// Exact sqrt(q) for rational q >= 0.
  static RadicalSum sqrt_of(const Rational& q);

  const std::vector<Term>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_rational() const noexcept;
  int sign() const;
  double to_double() const;
  std::string to_string() const;

  RadicalSum& operator+=(const RadicalSum& other);
  RadicalSum& operator-=(const RadicalSum& other);
  RadicalSum& operator*=(const RadicalSum& other);
  RadicalSum& operator/=(const RadicalSum& other);

  friend RadicalSum operator+(RadicalSum a, const RadicalSum& b) { return a += b; }
  friend RadicalSum operator-(RadicalSum a, const RadicalSum& b) { return a -= b; }
  friend RadicalSum operator*(RadicalSum a, const RadicalSum& b) { return a *= b; }
  friend RadicalSum operator/(RadicalSum a, const RadicalSum& b) { return a /= b; }
  RadicalSum operator-() const;

  friend bool operator==(const RadicalSum& a, const RadicalSum& b) { return (a - b).is_zero(); }
  friend bool operator!=(const RadicalSum& a, const RadicalSum& b) { return !(a == b); }
  friend bool operator<(const RadicalSum& a, const RadicalSum& b) { return (a - b).sign() < 0; }
  friend bool operator<=(const RadicalSum& a, const RadicalSum& b) { return (a - b).sign() <= 0; }
  friend bool operator>(const RadicalSum& a, const RadicalSum& b) { return b < a; }
  friend bool operator>=(const RadicalSum& a, const RadicalSum& b) { return b <= a; }

 private:
  void add_term(Rational coeff, mpz_class radicand);

  std::vector<Term> terms_;
};

}  // namespace lg
