#pragma once

#include "cubereg/current.hpp"
#include "cubereg/cycle.hpp"
#include "cubereg/error.hpp"
#include "cubereg/rational_function.hpp"
#include "cubereg/tracker.hpp"

#include <optional>

#include <random>

namespace testsupport {

using namespace cubereg;

inline Rational small_rational(std::mt19937_64& rng, int range = 9, int maxden = 7) {
  std::uniform_int_distribution<int> num(-range, range);
  std::uniform_int_distribution<int> den(1, maxden);
  return Rational(num(rng), den(rng));
}

inline GaussRational small_gauss(std::mt19937_64& rng, bool complex = true) {
  return GaussRational(small_rational(rng), complex ? small_rational(rng) : Rational(0));
}

inline Polynomial random_poly(std::mt19937_64& rng, int degree) {
  std::vector<GaussRational> c;
  for (int k = 0; k <= degree; ++k) c.push_back(small_gauss(rng));
  if (c.back().is_zero()) c.back() = GaussRational(1);
  return Polynomial(c);
}

inline RationalFunction random_rf(std::mt19937_64& rng, int max_degree) {
  std::uniform_int_distribution<int> deg(0, max_degree);
  Polynomial num = random_poly(rng, deg(rng));
  Polynomial den = random_poly(rng, deg(rng));
  if (num.is_zero()) num = Polynomial(1);
  return RationalFunction(num, den);
}

// Product of linear factors with small Gaussian-rational roots, times a unit.
inline RationalFunction random_factored_rf(std::mt19937_64& rng, int max_degree, bool complex = true) {
  std::uniform_int_distribution<int> deg(0, max_degree);
  int dn = deg(rng);
  int dd = deg(rng);
  if (dn + dd == 0) dn = 1;
  Polynomial num(1), den(1);
  for (int k = 0; k < dn; ++k) num = num * Polynomial::linear(small_gauss(rng, complex));
  for (int k = 0; k < dd; ++k) den = den * Polynomial::linear(small_gauss(rng, complex));
  GaussRational unit = small_gauss(rng, complex);
  if (unit.is_zero()) unit = GaussRational(2);
  return RationalFunction(num.scaled(unit), den);
}

inline std::optional<Cycle> random_admissible(std::mt19937_64& rng, int n, bool require_no_offbox = false) {
  std::uniform_int_distribution<int> nterms(1, 3);
  std::uniform_int_distribution<int> coeff(-3, 3);
  Cycle z(Ambient::Point, n);
  int k = nterms(rng);
  for (int j = 0; j < k; ++j) {
    ParamCurve c;
    for (int i = 0; i < n; ++i) c.coords.push_back(random_factored_rf(rng, 3, j % 2 == 0));
    int a = coeff(rng);
    z.add(Rational(a == 0 ? 1 : a), c);
  }
  z.normalize();
  AdmissibilityReport rep = check_admissible(z);
  if (!rep.ok) return std::nullopt;
  if (require_no_offbox && !rep.notes.empty()) return std::nullopt;
  return z;
}

// Endpoint multiset from arcs compared with the divisor, using numeric locations.
inline bool endpoints_match(const std::vector<TArc>& arcs, const RationalFunction& f) {
  DivisorList d = rf_zeros_poles(f);
  for (const auto& e : d.entries) {
    int count = 0;
    for (const auto& a : arcs) {
      const DivisorEntry& end = e.multiplicity > 0 ? a.zero() : a.pole();
      bool same = end.location.infinite == e.location.infinite &&
                  (e.location.infinite || std::abs(end.approx - e.approx) < 1e-12);
      if (same) ++count;
    }
    if (count != std::abs(e.multiplicity)) return false;
  }
  int total = 0;
  for (const auto& e : d.entries)
    if (e.multiplicity > 0) total += e.multiplicity;
  return static_cast<int>(arcs.size()) == total;
}

inline std::vector<TArc> track_rotating(const RationalFunction& f, double& theta) {
  for (theta = 0.0;; theta += 0.37) {
    try {
      return track_T(f, theta);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::TrackingFailure || theta > 3.0) throw;
    }
  }
}

inline Factor random_factor(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> kind(0, 3), idx(1, n);
  return {static_cast<FactorKind>(kind(rng)), idx(rng)};
}

inline CurrentExpr random_expr(std::mt19937_64& rng, int n, int max_terms) {
  std::uniform_int_distribution<int> nterms(1, max_terms), nf(0, 4), coeff(-5, 5), tw(0, 3);
  CurrentExpr e;
  int m = nterms(rng);
  for (int i = 0; i < m; ++i) {
    std::vector<Factor> f;
    int k = nf(rng);
    for (int j = 0; j < k; ++j) f.push_back(random_factor(rng, n));
    e += CurrentExpr::monomial(Rational(coeff(rng)), tw(rng), f);
  }
  return e;
}

inline std::complex<double> random_off_axis(std::mt19937_64& rng, double scale) {
  std::uniform_real_distribution<double> u(-scale, scale);
  std::complex<double> z;
  do {
    z = {u(rng), u(rng)};
  } while (std::abs(z.imag()) < 1e-3 || std::abs(z) < 1e-2 || std::abs(z - 1.0) < 1e-2);
  return z;
}

}  // namespace testsupport
