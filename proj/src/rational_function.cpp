#include "cubereg/rational_function.hpp"

#include "cubereg/error.hpp"

#include <limits>

namespace cubereg {

std::complex<double> Location::approx() const {
  if (infinite) return {std::numeric_limits<double>::infinity(), 0.0};
  return value.to_complex();
}

std::string Location::to_string() const { return infinite ? "inf" : value.to_string(); }

bool DivisorList::exact() const {
  for (const auto& e : entries)
    if (!e.exact) return false;
  return true;
}

int DivisorList::degree() const {
  int d = 0;
  for (const auto& e : entries) d += e.multiplicity;
  return d;
}

std::vector<DivisorEntry> DivisorList::zeros() const {
  std::vector<DivisorEntry> out;
  for (const auto& e : entries)
    if (e.multiplicity > 0) out.push_back(e);
  return out;
}

std::vector<DivisorEntry> DivisorList::poles() const {
  std::vector<DivisorEntry> out;
  for (const auto& e : entries)
    if (e.multiplicity < 0) out.push_back(e);
  return out;
}

std::string DivisorList::to_string() const {
  std::string out;
  for (const auto& e : entries) {
    if (!out.empty()) out += ", ";
    std::string loc = e.exact ? e.location.to_string()
                              : "~(" + std::to_string(e.approx.real()) + "," + std::to_string(e.approx.imag()) + ")";
    out += loc + ":" + std::to_string(e.multiplicity);
  }
  return "{" + out + "}";
}

RationalFunction::RationalFunction(Polynomial num, Polynomial den) {
  if (den.is_zero()) throw Error(ErrorCode::ZeroDenominator, "rational function with zero denominator");
  if (num.is_zero()) {
    den_ = Polynomial(1);
    return;
  }
  Polynomial g = gcd(num, den);
  if (g.degree() > 0) {
    num = divmod(num, g).first;
    den = divmod(den, g).first;
  }
  GaussRational inv = den.leading().inverse();
  num_ = num.scaled(inv);
  den_ = den.scaled(inv);
}

std::optional<GaussRational> RationalFunction::constant_value() const {
  if (!is_constant()) return std::nullopt;
  return num_.coeff(0);
}

std::optional<GaussRational> RationalFunction::eval(const GaussRational& x) const {
  GaussRational d = den_.eval(x);
  if (d.is_zero()) return std::nullopt;
  return num_.eval(x) / d;
}

std::optional<GaussRational> RationalFunction::eval(const Location& x) const {
  if (!x.infinite) return eval(x.value);
  int dn = num_.degree();
  int dd = den_.degree();
  if (num_.is_zero() || dn < dd) return GaussRational(0);
  if (dn > dd) return std::nullopt;
  return num_.leading() / den_.leading();
}

std::complex<double> RationalFunction::eval(std::complex<double> x) const {
  return num_.eval(x) / den_.eval(x);
}

std::complex<double> RationalFunction::derivative_at(std::complex<double> x) const {
  std::complex<double> n = num_.eval(x);
  std::complex<double> d = den_.eval(x);
  std::complex<double> dn = num_.derivative().eval(x);
  std::complex<double> dd = den_.derivative().eval(x);
  return (dn * d - n * dd) / (d * d);
}

std::complex<double> RationalFunction::dlog_at(std::complex<double> x) const {
  return num_.derivative().eval(x) / num_.eval(x) - den_.derivative().eval(x) / den_.eval(x);
}

static int root_multiplicity(Polynomial p, const GaussRational& r) {
  int m = 0;
  Polynomial lin = Polynomial::linear(r);
  while (!p.is_zero() && p.eval(r).is_zero()) {
    p = divmod(p, lin).first;
    ++m;
  }
  return m;
}

int RationalFunction::order_at(const Location& x) const {
  if (num_.is_zero()) throw Error(ErrorCode::ZeroFunction, "order of the zero function");
  if (x.infinite) return den_.degree() - num_.degree();
  return root_multiplicity(num_, x.value) - root_multiplicity(den_, x.value);
}

RationalFunction RationalFunction::derivative() const {
  return RationalFunction(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

RationalFunction RationalFunction::pow(int exponent) const {
  if (exponent < 0) {
    if (num_.is_zero()) throw Error(ErrorCode::ZeroDenominator, "negative power of zero");
    return RationalFunction(den_, num_).pow(-exponent);
  }
  RationalFunction result(1);
  RationalFunction b = *this;
  while (exponent > 0) {
    if (exponent & 1) result = result * b;
    b = b * b;
    exponent >>= 1;
  }
  return result;
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
  return RationalFunction(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
  if (b.is_zero()) throw Error(ErrorCode::ZeroDenominator, "division by the zero function");
  return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
}

std::string RationalFunction::to_expr() const {
  if (den_ == Polynomial(1)) return num_.to_expr();
  return "(" + num_.to_expr() + ")/(" + den_.to_expr() + ")";
}

RationalFunction rf_normalize(const Polynomial& num, const Polynomial& den) { return RationalFunction(num, den); }

std::optional<GaussRational> rf_eval(const RationalFunction& f, const GaussRational& t) { return f.eval(t); }

std::complex<double> rf_eval(const RationalFunction& f, std::complex<double> t) { return f.eval(t); }

RationalFunction rf_dlog(const RationalFunction& f) {
  if (f.is_zero()) throw Error(ErrorCode::ZeroFunction, "dlog of the zero function");
  // f'/f = (n'd - nd')/(nd)
  return RationalFunction(f.num().derivative() * f.den() - f.num() * f.den().derivative(), f.num() * f.den());
}

DivisorList rf_zeros_poles(const RationalFunction& f) {
  if (f.is_constant()) throw Error(ErrorCode::ConstantFunction, "divisor of a constant function");
  DivisorList out;
  auto add = [&](const Polynomial& p, int sign) {
    for (const auto& r : poly_roots(p)) {
      DivisorEntry e;
      e.exact = r.exact;
      e.location = Location::at(r.value);
      e.approx = r.approx;
      e.multiplicity = sign * r.multiplicity;
      out.entries.push_back(e);
    }
  };
  add(f.num(), +1);
  add(f.den(), -1);
  int defect = f.den().degree() - f.num().degree();
  if (defect != 0) {
    DivisorEntry e;
    e.location = Location::inf();
    e.approx = Location::inf().approx();
    e.multiplicity = defect;
    out.entries.push_back(e);
  }
  return out;
}

}  // namespace cubereg
