#include "lg/radical.hpp"

#include <mpfr.h>

#include <array>
#include <sstream>

#include "lg/errors.hpp"

namespace lg {
namespace {

constexpr std::array<unsigned long, 25> kSmallPrimes = {
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};

bool is_square(const mpz_class& z) { return mpz_perfect_square_p(z.get_mpz_t()) != 0; }

mpz_class isqrt(const mpz_class& z) {
  mpz_class out;
  mpz_sqrt(out.get_mpz_t(), z.get_mpz_t());
  return out;
}

// Pulls square factors out of `radicand` into `coeff`.
void reduce(Rational& coeff, mpz_class& radicand) {
  for (unsigned long p : kSmallPrimes) {
    const unsigned long p2 = p * p;
    while (mpz_divisible_ui_p(radicand.get_mpz_t(), p2) != 0) {
      mpz_divexact_ui(radicand.get_mpz_t(), radicand.get_mpz_t(), p2);
      coeff *= p;
    }
  }
  if (radicand > 1 && is_square(radicand)) {
    coeff *= isqrt(radicand);
    radicand = 1;
  }
}

class MpfrValue {
 public:
  explicit MpfrValue(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
  ~MpfrValue() { mpfr_clear(v_); }
  MpfrValue(const MpfrValue&) = delete;
  MpfrValue& operator=(const MpfrValue&) = delete;
  mpfr_ptr get() { return v_; }

 private:
  mpfr_t v_;
};

}  // namespace

RadicalSum::RadicalSum(const Rational& q) {
  if (q != 0) terms_.push_back({q, mpz_class(1)});
}

RadicalSum RadicalSum::sqrt_of(const Rational& q) {
  if (q < 0) throw Error("square root of a negative rational");
  RadicalSum out;
  if (q == 0) return out;
  // sqrt(a/b) = sqrt(ab) / b
  Rational coeff = Rational(1) / Rational(q.get_den());
  mpz_class radicand = q.get_num() * q.get_den();
  reduce(coeff, radicand);
  out.add_term(coeff, radicand);
  return out;
}

void RadicalSum::add_term(Rational coeff, mpz_class radicand) {
  if (coeff == 0) return;
  for (auto it = terms_.begin(); it != terms_.end(); ++it) {
    if (it->radicand == radicand) {
      it->coeff += coeff;
      if (it->coeff == 0) terms_.erase(it);
      return;
    }
    mpz_class product = it->radicand * radicand;
    if (is_square(product)) {
      // sqrt(radicand) = sqrt(product) / it->radicand * sqrt(it->radicand)
      Rational scale(isqrt(product), it->radicand);
      scale.canonicalize();
      it->coeff += coeff * scale;
      if (it->coeff == 0) terms_.erase(it);
      return;
    }
  }
  terms_.push_back({std::move(coeff), std::move(radicand)});
}

bool RadicalSum::is_rational() const noexcept {
  return terms_.empty() || (terms_.size() == 1 && terms_.front().radicand == 1);
}

RadicalSum& RadicalSum::operator+=(const RadicalSum& other) {
  for (const auto& t : other.terms_) add_term(t.coeff, t.radicand);
  return *this;
}

RadicalSum& RadicalSum::operator-=(const RadicalSum& other) {
  for (const auto& t : other.terms_) add_term(-t.coeff, t.radicand);
  return *this;
}

RadicalSum RadicalSum::operator-() const {
  RadicalSum out = *this;
  for (auto& t : out.terms_) t.coeff = -t.coeff;
  return out;
}

RadicalSum& RadicalSum::operator*=(const RadicalSum& other) {
  RadicalSum out;
  for (const auto& a : terms_) {
    for (const auto& b : other.terms_) {
      Rational coeff = a.coeff * b.coeff;
      mpz_class radicand = a.radicand * b.radicand;
      reduce(coeff, radicand);
      out.add_term(std::move(coeff), std::move(radicand));
    }
  }
  *this = std::move(out);
  return *this;
}

RadicalSum& RadicalSum::operator/=(const RadicalSum& other) {
  if (other.is_zero()) throw Error("RadicalSum division by zero");
  if (other.terms_.size() != 1) {
    throw Error("RadicalSum division is only defined by single-term values");
  }
  // x / (c sqrt(m)) = x * sqrt(m) / (c m)
  const Term& d = other.terms_.front();
  RadicalSum factor;
  Rational coeff = Rational(1) / (d.coeff * d.radicand);
  factor.terms_.push_back({coeff, d.radicand});
  return *this *= factor;
}

int RadicalSum::sign() const {
  bool any_pos = false;
  bool any_neg = false;
  for (const auto& t : terms_) {
    (t.coeff > 0 ? any_pos : any_neg) = true;
  }
  if (!any_neg) return any_pos ? 1 : 0;
  if (!any_pos) return -1;

  // Mixed signs: the value is nonzero (distinct square classes are independent),
  // so enough precision always separates it from zero.
  for (mpfr_prec_t prec = 128; prec <= (1 << 16); prec *= 2) {
    MpfrValue sum(prec), term(prec), root(prec), magnitude(prec);
    mpfr_set_zero(sum.get(), 1);
    mpfr_set_zero(magnitude.get(), 1);
    for (const auto& t : terms_) {
      mpfr_set_z(root.get(), t.radicand.get_mpz_t(), MPFR_RNDN);
      mpfr_sqrt(root.get(), root.get(), MPFR_RNDN);
      mpfr_set_q(term.get(), t.coeff.get_mpq_t(), MPFR_RNDN);
      mpfr_mul(term.get(), term.get(), root.get(), MPFR_RNDN);
      mpfr_add(sum.get(), sum.get(), term.get(), MPFR_RNDN);
      mpfr_abs(term.get(), term.get(), MPFR_RNDN);
      mpfr_add(magnitude.get(), magnitude.get(), term.get(), MPFR_RNDU);
    }
    // Every rounding is relative 2^-prec; the sum of |terms| absorbs them all.
    const long slack = static_cast<long>(terms_.size()) + 8;
    mpfr_mul_si(magnitude.get(), magnitude.get(), slack, MPFR_RNDU);
    mpfr_div_2si(magnitude.get(), magnitude.get(), prec - 1, MPFR_RNDU);
    mpfr_abs(term.get(), sum.get(), MPFR_RNDN);
    if (mpfr_cmp(term.get(), magnitude.get()) > 0) return mpfr_sgn(sum.get()) > 0 ? 1 : -1;
  }
  throw Error("RadicalSum sign undecided at maximum precision");
}

double RadicalSum::to_double() const {
  MpfrValue sum(256), term(256), root(256);
  mpfr_set_zero(sum.get(), 1);
  for (const auto& t : terms_) {
    mpfr_set_z(root.get(), t.radicand.get_mpz_t(), MPFR_RNDN);
    mpfr_sqrt(root.get(), root.get(), MPFR_RNDN);
    mpfr_set_q(term.get(), t.coeff.get_mpq_t(), MPFR_RNDN);
    mpfr_mul(term.get(), term.get(), root.get(), MPFR_RNDN);
    mpfr_add(sum.get(), sum.get(), term.get(), MPFR_RNDN);
  }
  return mpfr_get_d(sum.get(), MPFR_RNDN);
}

std::string RadicalSum::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& t : terms_) {
    if (!first) out << " + ";
    first = false;
    out << lg::to_string(t.coeff);
    if (t.radicand != 1) out << "*sqrt(" << t.radicand.get_str() << ")";
  }
  return out.str();
}

}  // namespace lg
