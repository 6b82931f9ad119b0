#pragma once

#include "cubereg/gauss_rational.hpp"

#include <complex>
#include <string>
#include <utility>
#include <vector>

namespace cubereg {

// Univariate polynomial over Q(i), coefficients stored low degree first, no trailing zeros.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<GaussRational> coeffs);
  Polynomial(const GaussRational& c);  // NOLINT(google-explicit-constructor)
  Polynomial(long c) : Polynomial(GaussRational(c)) {}  // NOLINT(google-explicit-constructor)

  static Polynomial monomial(const GaussRational& c, int k);
  static Polynomial variable() { return monomial(GaussRational(1), 1); }
  // (t - root)
  static Polynomial linear(const GaussRational& root);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_constant() const { return c_.size() <= 1; }
  const std::vector<GaussRational>& coeffs() const { return c_; }
  GaussRational coeff(int k) const;
  const GaussRational& leading() const;

  GaussRational eval(const GaussRational& x) const;
  std::complex<double> eval(std::complex<double> x) const;
  Polynomial derivative() const;
  Polynomial monic() const;
  Polynomial scaled(const GaussRational& s) const;
  std::vector<std::complex<double>> to_complex() const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial operator-() const { return scaled(GaussRational(-1)); }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  std::string to_expr(const std::string& var = "t") const;

 private:
  void trim();
  std::vector<GaussRational> c_;
};

// Quotient and remainder; throws ZeroDenominator on a zero divisor.
std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b);
// Monic gcd; gcd(0, 0) = 0.
Polynomial gcd(Polynomial a, Polynomial b);
// Yun's algorithm: monic squarefree factors with their multiplicities.
std::vector<std::pair<Polynomial, int>> squarefree_factorization(const Polynomial& p);

struct PolyRoot {
  bool exact = true;
  GaussRational value;          // valid when exact
  std::complex<double> approx;  // always filled
  int multiplicity = 1;
};

// Exact roots whenever they lie in Q(i); otherwise roots polished to ~100 digits and flagged inexact.
std::vector<PolyRoot> poly_roots(const Polynomial& p);

}  // namespace cubereg
