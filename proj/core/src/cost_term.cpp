#include "lg/cost_term.hpp"

#include <cmath>

namespace lg {

CostTerm CostTerm::pow(const Rational& e) const {
  return {std::pow(coeff, e.get_d()), n_exp * e, r_exp * e, s_exp * e, lambda_exp * e};
}

double CostTerm::log_evaluate(double n, double r, double s, double lambda) const {
  return std::log(coeff) + n_exp.get_d() * std::log(n) + r_exp.get_d() * std::log(r) +
         s_exp.get_d() * std::log(s) + lambda_exp.get_d() * std::log(lambda);
}

double CostTerm::evaluate(double n, double r, double s, double lambda) const {
  return std::exp(log_evaluate(n, r, s, lambda));
}

Rational CostTerm::exponent_at(const ExponentPoint& p) const {
  Rational e = n_exp + r_exp * p.x - s_exp * p.t + lambda_exp * p.y;
  e.canonicalize();
  return e;
}

namespace {

void append_power(std::string& out, const char* symbol, const Rational& e) {
  if (e == 0) return;
  if (!out.empty()) out += "*";
  out += symbol;
  if (e == 1) return;
  out += "^";
  if (e.get_den() == 1 && e > 0) {
    out += lg::to_string(e);
  } else {
    out += "(" + lg::to_string(e) + ")";
  }
}

}  // namespace

std::string CostTerm::to_string() const {
  std::string out;
  if (coeff != 1.0) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", coeff);
    out = buf;
  }
  append_power(out, "n", n_exp);
  append_power(out, "r", r_exp);
  append_power(out, "s", s_exp);
  append_power(out, "lambda", lambda_exp);
  return out.empty() ? "1" : out;
}

CostTerm operator*(const CostTerm& a, const CostTerm& b) {
  return {a.coeff * b.coeff, a.n_exp + b.n_exp, a.r_exp + b.r_exp, a.s_exp + b.s_exp, a.lambda_exp + b.lambda_exp};
}

CostTerm operator/(const CostTerm& a, const CostTerm& b) { return a * b.pow(-1); }

}  // namespace lg
