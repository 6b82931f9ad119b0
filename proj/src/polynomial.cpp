#include "cubereg/polynomial.hpp"

#include "cubereg/error.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>

namespace cubereg {

namespace mp = boost::multiprecision;
using HPReal = mp::cpp_bin_float_100;
using HPComplex = mp::cpp_complex_100;

Polynomial::Polynomial(std::vector<GaussRational> coeffs) : c_(std::move(coeffs)) { trim(); }

Polynomial::Polynomial(const GaussRational& c) {
  if (!c.is_zero()) c_.push_back(c);
}

Polynomial Polynomial::monomial(const GaussRational& c, int k) {
  std::vector<GaussRational> v(static_cast<size_t>(k) + 1);
  v[static_cast<size_t>(k)] = c;
  return Polynomial(std::move(v));
}

Polynomial Polynomial::linear(const GaussRational& root) { return Polynomial({-root, GaussRational(1)}); }

void Polynomial::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

GaussRational Polynomial::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(c_.size())) return GaussRational(0);
  return c_[static_cast<size_t>(k)];
}

const GaussRational& Polynomial::leading() const {
  if (c_.empty()) throw Error(ErrorCode::ZeroFunction, "leading coefficient of the zero polynomial");
  return c_.back();
}

GaussRational Polynomial::eval(const GaussRational& x) const {
  GaussRational acc(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::complex<double> Polynomial::eval(std::complex<double> x) const {
  std::complex<double> acc(0.0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + it->to_complex();
  return acc;
}

std::vector<std::complex<double>> Polynomial::to_complex() const {
  std::vector<std::complex<double>> out;
  out.reserve(c_.size());
  for (const auto& c : c_) out.push_back(c.to_complex());
  return out;
}

Polynomial Polynomial::derivative() const {
  if (c_.size() <= 1) return {};
  std::vector<GaussRational> d(c_.size() - 1);
  for (size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * GaussRational(static_cast<long>(k));
  return Polynomial(std::move(d));
}

Polynomial Polynomial::monic() const {
  if (c_.empty()) return {};
  return scaled(leading().inverse());
}

Polynomial Polynomial::scaled(const GaussRational& s) const {
  std::vector<GaussRational> v = c_;
  for (auto& c : v) c *= s;
  return Polynomial(std::move(v));
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
  trim();
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<GaussRational> v(a.c_.size() + b.c_.size() - 1);
  for (size_t i = 0; i < a.c_.size(); ++i)
    for (size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
  return Polynomial(std::move(v));
}

std::string Polynomial::to_expr(const std::string& var) const {
  if (c_.empty()) return "0";
  std::string out;
  for (int k = degree(); k >= 0; --k) {
    const GaussRational& c = c_[static_cast<size_t>(k)];
    if (c.is_zero()) continue;
    std::string mono;
    if (k == 1) mono = var;
    if (k > 1) mono = var + "^" + std::to_string(k);
    std::string coef;
    bool negative_real = c.is_real() && c.re() < 0;
    GaussRational shown = negative_real ? -c : c;
    if (!(shown.is_one() && k > 0)) coef = shown.to_expr();
    std::string piece = coef.empty() ? mono : (mono.empty() ? coef : coef + "*" + mono);
    if (out.empty()) {
      out = negative_real ? "-" + piece : piece;
    } else {
      out += negative_real ? " - " : " + ";
      out += piece;
    }
  }
  return out;
}

std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw Error(ErrorCode::ZeroDenominator, "polynomial division by zero");
  std::vector<GaussRational> rem = a.coeffs();
  int db = b.degree();
  int da = a.degree();
  if (da < db) return {Polynomial(), a};
  std::vector<GaussRational> quot(static_cast<size_t>(da - db) + 1);
  GaussRational inv_lead = b.leading().inverse();
  for (int k = da; k >= db; --k) {
    GaussRational q = rem[static_cast<size_t>(k)] * inv_lead;
    quot[static_cast<size_t>(k - db)] = q;
    if (q.is_zero()) continue;
    for (int j = 0; j <= db; ++j) rem[static_cast<size_t>(k - db + j)] -= q * b.coeff(j);
  }
  rem.resize(static_cast<size_t>(db));
  return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

Polynomial gcd(Polynomial a, Polynomial b) {
  while (!b.is_zero()) {
    Polynomial r = divmod(a, b).second;
    a = std::move(b);
    b = r.monic();
  }
  return a.monic();
}

std::vector<std::pair<Polynomial, int>> squarefree_factorization(const Polynomial& p) {
  std::vector<std::pair<Polynomial, int>> out;
  if (p.degree() < 1) return out;
  Polynomial f = p.monic();
  Polynomial fp = f.derivative();
  Polynomial a0 = gcd(f, fp);
  Polynomial b = divmod(f, a0).first;
  Polynomial c = divmod(fp, a0).first;
  Polynomial d = c - b.derivative();
  int i = 1;
  while (b.degree() >= 1) {
    Polynomial a = gcd(b, d);
    if (a.degree() >= 1) out.emplace_back(a, i);
    b = divmod(b, a).first;
    c = divmod(d, a).first;
    d = c - b.derivative();
    ++i;
  }
  return out;
}

namespace {

HPReal to_hp(const Rational& q) {
  return HPReal(numerator(q).str()) / HPReal(denominator(q).str());
}

// Best rational approximation by continued fractions, stopping once the error is negligible.
Rational rationalize(const HPReal& x) {
  HPReal y = x;
  Integer h2 = 0, k2 = 1;  // h_{n-2}, k_{n-2}
  Integer h1 = 1, k1 = 0;  // h_{n-1}, k_{n-1}
  Rational best(0);
  const HPReal tiny("1e-60");
  const Integer max_den("1000000000000000000000000");
  for (int iter = 0; iter < 200; ++iter) {
    HPReal fl = floor(y);
    Integer a(fl.convert_to<mp::cpp_int>().str());
    Integer hn = a * h1 + h2;
    Integer kn = a * k1 + k2;
    if (kn > max_den) break;
    best = Rational(hn, kn);
    if (abs(x - to_hp(best)) <= tiny * (1 + abs(x))) break;
    h2 = h1;
    k2 = k1;
    h1 = hn;
    k1 = kn;
    HPReal frac = y - fl;
    if (frac == 0) break;
    y = 1 / frac;
  }
  return best;
}

std::vector<std::complex<double>> aberth(const std::vector<std::complex<double>>& c) {
  int n = static_cast<int>(c.size()) - 1;
  std::vector<std::complex<double>> z(static_cast<size_t>(n));
  double bound = 0.0;
  for (int k = 0; k < n; ++k) bound = std::max(bound, std::abs(c[static_cast<size_t>(k)] / c.back()));
  double radius = 0.5 * (1.0 + bound);
  for (int k = 0; k < n; ++k)
    z[static_cast<size_t>(k)] = std::polar(radius, 2.0 * M_PI * k / n + 0.4);
  auto eval = [&](std::complex<double> x, std::complex<double>& dp) {
    std::complex<double> p = c.back();
    dp = 0.0;
    for (int k = n - 1; k >= 0; --k) {
      dp = dp * x + p;
      p = p * x + c[static_cast<size_t>(k)];
    }
    return p;
  };
  for (int iter = 0; iter < 1000; ++iter) {
    double maxstep = 0.0;
    for (int k = 0; k < n; ++k) {
      std::complex<double> dp;
      std::complex<double> p = eval(z[static_cast<size_t>(k)], dp);
      if (p == 0.0) continue;
      std::complex<double> ratio = p / dp;
      std::complex<double> sum = 0.0;
      for (int j = 0; j < n; ++j)
        if (j != k) sum += 1.0 / (z[static_cast<size_t>(k)] - z[static_cast<size_t>(j)]);
      std::complex<double> w = ratio / (1.0 - ratio * sum);
      z[static_cast<size_t>(k)] -= w;
      maxstep = std::max(maxstep, std::abs(w) / (1.0 + std::abs(z[static_cast<size_t>(k)])));
    }
    if (maxstep < 1e-15) break;
  }
  return z;
}

HPComplex polish(const std::vector<HPComplex>& c, HPComplex z) {
  int n = static_cast<int>(c.size()) - 1;
  const HPReal eps("1e-95");
  for (int iter = 0; iter < 60; ++iter) {
    HPComplex p = c.back();
    HPComplex dp(0);
    for (int k = n - 1; k >= 0; --k) {
      dp = dp * z + p;
      p = p * z + c[static_cast<size_t>(k)];
    }
    if (abs(dp) == 0) break;
    HPComplex step = p / dp;
    z -= step;
    if (abs(step) <= eps * (1 + abs(z))) break;
  }
  return z;
}

void squarefree_roots(const Polynomial& a, int mult, std::vector<PolyRoot>& out) {
  if (a.degree() == 1) {
    GaussRational r = -a.coeff(0) / a.coeff(1);
    out.push_back({true, r, r.to_complex(), mult});
    return;
  }
  std::vector<std::complex<double>> start = aberth(a.to_complex());
  std::vector<HPComplex> hc;
  for (const auto& c : a.coeffs()) hc.emplace_back(to_hp(c.re()), to_hp(c.im()));
  for (const auto& z0 : start) {
    HPComplex z = polish(hc, HPComplex(z0.real(), z0.imag()));
    GaussRational cand(rationalize(z.real()), rationalize(z.imag()));
    if (a.eval(cand).is_zero()) {
      out.push_back({true, cand, cand.to_complex(), mult});
    } else {
      out.push_back({false, GaussRational(0),
                     {z.real().convert_to<double>(), z.imag().convert_to<double>()}, mult});
    }
  }
}

}  // namespace

std::vector<PolyRoot> poly_roots(const Polynomial& p) {
  std::vector<PolyRoot> out;
  for (const auto& [factor, mult] : squarefree_factorization(p)) squarefree_roots(factor, mult, out);
  return out;
}

}  // namespace cubereg
