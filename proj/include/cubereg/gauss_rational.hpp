#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <complex>
#include <string>

namespace cubereg {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

// Element of Q(i). GMP keeps both parts in lowest terms with positive denominators.
class GaussRational {
 public:
  GaussRational() = default;
  GaussRational(long value) : re_(value) {}  // NOLINT(google-explicit-constructor)
  GaussRational(Rational re, Rational im = 0) : re_(std::move(re)), im_(std::move(im)) {}  // NOLINT

  static GaussRational imag_unit() { return GaussRational(Rational(0), Rational(1)); }

  const Rational& re() const { return re_; }
  const Rational& im() const { return im_; }

  bool is_zero() const { return re_ == 0 && im_ == 0; }
  bool is_one() const { return re_ == 1 && im_ == 0; }
  bool is_real() const { return im_ == 0; }

  GaussRational conj() const { return GaussRational(re_, Rational(-im_)); }
  Rational norm() const { return Rational(re_ * re_ + im_ * im_); }
  GaussRational inverse() const;

  GaussRational operator-() const { return GaussRational(Rational(-re_), Rational(-im_)); }
  GaussRational& operator+=(const GaussRational& o);
  GaussRational& operator-=(const GaussRational& o);
  GaussRational& operator*=(const GaussRational& o);
  GaussRational& operator/=(const GaussRational& o);

  friend GaussRational operator+(GaussRational a, const GaussRational& b) { return a += b; }
  friend GaussRational operator-(GaussRational a, const GaussRational& b) { return a -= b; }
  friend GaussRational operator*(GaussRational a, const GaussRational& b) { return a *= b; }
  friend GaussRational operator/(GaussRational a, const GaussRational& b) { return a /= b; }
  friend bool operator==(const GaussRational& a, const GaussRational& b) { return a.re_ == b.re_ && a.im_ == b.im_; }
  friend bool operator!=(const GaussRational& a, const GaussRational& b) { return !(a == b); }
  // Lexicographic on (re, im); only used to sort.
  friend bool operator<(const GaussRational& a, const GaussRational& b) {
    return a.re_ < b.re_ || (a.re_ == b.re_ && a.im_ < b.im_);
  }

  std::complex<double> to_complex() const;
  // "3/5", "-i", "1/2+1/3*i"
  std::string to_string() const;
  // Same value, safe to embed inside a larger expression.
  std::string to_expr() const;

 private:
  Rational re_;
  Rational im_;
};

GaussRational pow(const GaussRational& base, int exponent);

std::string rational_to_string(const Rational& q);

}  // namespace cubereg
