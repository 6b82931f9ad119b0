#pragma once

#include "cubereg/polynomial.hpp"

#include <complex>
#include <optional>
#include <string>
#include <vector>

namespace cubereg {

// A point of P^1 with exact coordinate.
struct Location {
  bool infinite = false;
  GaussRational value;

  static Location at(const GaussRational& v) { return {false, v}; }
  static Location inf() { return {true, GaussRational(0)}; }

  std::complex<double> approx() const;
  std::string to_string() const;
  friend bool operator==(const Location& a, const Location& b) {
    return a.infinite == b.infinite && (a.infinite || a.value == b.value);
  }
  friend bool operator!=(const Location& a, const Location& b) { return !(a == b); }
  friend bool operator<(const Location& a, const Location& b) {
    if (a.infinite != b.infinite) return b.infinite;
    return !a.infinite && a.value < b.value;
  }
};

struct DivisorEntry {
  Location location;
  int multiplicity = 0;  // positive for zeros, negative for poles
  bool exact = true;
  std::complex<double> approx;  // numeric location (for infinity: inf)
};

struct DivisorList {
  std::vector<DivisorEntry> entries;

  bool exact() const;
  int degree() const;
  std::vector<DivisorEntry> zeros() const;
  std::vector<DivisorEntry> poles() const;
  std::string to_string() const;
};

// Canonical form: gcd(num, den) = 1 and den monic. Value nullopt stands for infinity.
class RationalFunction {
 public:
  RationalFunction() : den_(1) {}
  RationalFunction(Polynomial num, Polynomial den = Polynomial(1));  // NOLINT(google-explicit-constructor)
  RationalFunction(const GaussRational& c) : RationalFunction(Polynomial(c)) {}  // NOLINT
  RationalFunction(long c) : RationalFunction(Polynomial(c)) {}  // NOLINT

  static RationalFunction variable() { return RationalFunction(Polynomial::variable()); }

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  std::optional<GaussRational> constant_value() const;
  // Degree as a map P^1 -> P^1.
  int degree() const { return std::max(num_.degree(), den_.degree()); }

  std::optional<GaussRational> eval(const GaussRational& x) const;
  std::optional<GaussRational> eval(const Location& x) const;
  std::complex<double> eval(std::complex<double> x) const;
  // Logarithmic derivative value f'(x)/f(x) in floating point.
  std::complex<double> dlog_at(std::complex<double> x) const;
  std::complex<double> derivative_at(std::complex<double> x) const;
  // Order of vanishing at x (negative for a pole).
  int order_at(const Location& x) const;

  RationalFunction derivative() const;
  RationalFunction pow(int exponent) const;

  RationalFunction operator-() const { return RationalFunction(-num_, den_); }
  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RationalFunction& a, const RationalFunction& b) { return !(a == b); }

  // Parseable by parse_expression.
  std::string to_expr() const;

 private:
  Polynomial num_;
  Polynomial den_;
};

RationalFunction rf_normalize(const Polynomial& num, const Polynomial& den);
std::optional<GaussRational> rf_eval(const RationalFunction& f, const GaussRational& t);
std::complex<double> rf_eval(const RationalFunction& f, std::complex<double> t);
RationalFunction rf_dlog(const RationalFunction& f);
DivisorList rf_zeros_poles(const RationalFunction& f);

}  // namespace cubereg
