#include "cubereg/gauss_rational.hpp"

#include "cubereg/error.hpp"

namespace cubereg {

GaussRational GaussRational::inverse() const {
  if (is_zero()) throw Error(ErrorCode::ZeroDenominator, "division by zero in Q(i)");
  Rational n = norm();
  return GaussRational(Rational(re_ / n), Rational(-im_ / n));
}

GaussRational& GaussRational::operator+=(const GaussRational& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussRational& GaussRational::operator-=(const GaussRational& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussRational& GaussRational::operator*=(const GaussRational& o) {
  Rational re = re_ * o.re_ - im_ * o.im_;
  Rational im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

GaussRational& GaussRational::operator/=(const GaussRational& o) { return *this *= o.inverse(); }

std::complex<double> GaussRational::to_complex() const {
  return {re_.convert_to<double>(), im_.convert_to<double>()};
}

std::string rational_to_string(const Rational& q) { return q.str(); }

std::string GaussRational::to_string() const {
  if (im_ == 0) return re_.str();
  std::string imag;
  if (im_ == 1) {
    imag = "i";
  } else if (im_ == -1) {
    imag = "-i";
  } else {
    imag = im_.str() + "*i";
  }
  if (re_ == 0) return imag;
  return re_.str() + (im_ > 0 ? "+" : "") + imag;
}

std::string GaussRational::to_expr() const {
  bool bare = im_ == 0 && re_ >= 0 && denominator(re_) == 1;
  return bare ? to_string() : "(" + to_string() + ")";
}

GaussRational pow(const GaussRational& base, int exponent) {
  if (exponent < 0) return pow(base.inverse(), -exponent);
  GaussRational result(1);
  GaussRational b = base;
  while (exponent > 0) {
    if (exponent & 1) result *= b;
    b *= b;
    exponent >>= 1;
  }
  return result;
}

}  // namespace cubereg
