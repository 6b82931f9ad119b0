#include "doctest.h"

#include "cubereg/error.hpp"
#include "cubereg/expression.hpp"
#include "test_support.hpp"

using namespace cubereg;
using testsupport::random_poly;
using testsupport::random_rf;
using testsupport::small_gauss;

namespace {

const GaussRational I = GaussRational::imag_unit();
RationalFunction T() { return RationalFunction::variable(); }
RationalFunction P(const char* s) { return parse_expression(s); }

int mult_at(const DivisorList& d, const Location& loc) {
  int m = 0;
  for (const auto& e : d.entries)
    if (e.exact && e.location == loc) m += e.multiplicity;
  return m;
}

}  // namespace

TEST_CASE("gauss rational arithmetic is canonical") {
  GaussRational a(Rational(6, 4), Rational(-2, 8));
  CHECK(a.re() == Rational(3, 2));
  CHECK(a.im() == Rational(-1, 4));
  CHECK(denominator(a.re()) > 0);
  CHECK(I * I == GaussRational(-1));
  CHECK((a / a).is_one());
  CHECK_THROWS_AS(GaussRational(0).inverse(), Error);
}

TEST_CASE("field axioms hold exactly on random elements") {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 200; ++k) {
    GaussRational a = small_gauss(rng), b = small_gauss(rng), c = small_gauss(rng);
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a + b == b + a);
    if (!b.is_zero()) CHECK((a / b) * b == a);
  }
}

TEST_CASE("rf_normalize examples") {
  Polynomial t = Polynomial::variable();
  SUBCASE("common factor t") {
    RationalFunction f = rf_normalize(t * t - t, t);
    CHECK(f == RationalFunction(t - Polynomial(1)));
  }
  SUBCASE("already canonical") {
    RationalFunction f = rf_normalize(t - Polynomial(GaussRational(Rational(2, 5))), t);
    CHECK(f.num() == t - Polynomial(GaussRational(Rational(2, 5))));
    CHECK(f.den() == t);
  }
  SUBCASE("leading coefficient normalization over Q(i)") {
    RationalFunction f = rf_normalize(t.scaled(2) + Polynomial(2), t.scaled(2) - Polynomial(I * GaussRational(2)));
    CHECK(f.num() == t + Polynomial(1));
    CHECK(f.den() == t - Polynomial(I));
  }
  CHECK_THROWS_AS(rf_normalize(t, Polynomial()), Error);
}

TEST_CASE("rf_eval examples") {
  RationalFunction z1 = P("1 - (2/5)/t");
  auto v = rf_eval(z1, GaussRational(Rational(2, 5)));
  REQUIRE(v);
  CHECK(v->is_zero());
  CHECK_FALSE(T().eval(Location::inf()).has_value());
  // Oracle: direct Q(i) arithmetic on numerator and denominator.
  GaussRational expected = (I - GaussRational(1)) / (I + GaussRational(1));
  CHECK(expected == I);
  auto w = rf_eval(P("(t-1)/(t+1)"), I);
  REQUIRE(w);
  CHECK(*w == expected);
  CHECK_FALSE(rf_eval(P("1/t"), GaussRational(0)).has_value());
}

TEST_CASE("rf_dlog examples") {
  CHECK(rf_dlog(T()) == P("1/t"));
  CHECK(rf_dlog(P("1-t")) == P("-1/(1-t)"));
  // Partial fractions by hand: 1/(t-a) - 1/t = a / (t^2 - a t), a = 2/5.
  GaussRational a(Rational(2, 5));
  Polynomial t = Polynomial::variable();
  RationalFunction hand(Polynomial(a), t * t - t.scaled(a));
  CHECK(rf_dlog(P("(t-2/5)/t")) == hand);
  CHECK_THROWS_AS(rf_dlog(RationalFunction()), Error);
}

TEST_CASE("rf_zeros_poles examples") {
  SUBCASE("first coordinate of V(2/5)") {
    DivisorList d = rf_zeros_poles(P("1 - (2/5)/t"));
    CHECK(d.exact());
    CHECK(mult_at(d, Location::at(GaussRational(Rational(2, 5)))) == 1);
    CHECK(mult_at(d, Location::at(GaussRational(0))) == -1);
    CHECK(d.entries.size() == 2);
  }
  SUBCASE("t^2") {
    DivisorList d = rf_zeros_poles(P("t^2"));
    CHECK(mult_at(d, Location::at(GaussRational(0))) == 2);
    CHECK(mult_at(d, Location::inf()) == -2);
  }
  SUBCASE("t^2+1 factors over Q(i)") {
    DivisorList d = rf_zeros_poles(P("t^2+1"));
    CHECK(d.exact());
    CHECK(mult_at(d, Location::at(I)) == 1);
    CHECK(mult_at(d, Location::at(-I)) == 1);
    CHECK(mult_at(d, Location::inf()) == -2);
  }
  SUBCASE("irrational roots are flagged inexact") {
    DivisorList d = rf_zeros_poles(P("t^2-2"));
    CHECK_FALSE(d.exact());
    CHECK(d.degree() == 0);
    for (const auto& e : d.zeros()) CHECK(std::abs(std::abs(e.approx.real()) - std::sqrt(2.0)) < 1e-14);
  }
  CHECK_THROWS_AS(rf_zeros_poles(RationalFunction(3)), Error);
}

TEST_CASE("exact roots with repeated complex factors") {
  GaussRational r1(Rational(3, 7), Rational(-2, 3));
  GaussRational r2(Rational(-5, 2), Rational(1, 9));
  Polynomial p = Polynomial::linear(r1) * Polynomial::linear(r1) * Polynomial::linear(r1) * Polynomial::linear(r2);
  DivisorList d = rf_zeros_poles(RationalFunction(p.scaled(GaussRational(7))));
  CHECK(d.exact());
  CHECK(mult_at(d, Location::at(r1)) == 3);
  CHECK(mult_at(d, Location::at(r2)) == 1);
}

TEST_CASE("property: dlog(fg) = dlog f + dlog g exactly") {
  std::mt19937_64 rng(2024);
  for (int k = 0; k < 60; ++k) {
    RationalFunction f = random_rf(rng, 5), g = random_rf(rng, 5);
    if (f.is_zero() || g.is_zero()) continue;
    CHECK(rf_dlog(f * g) == rf_dlog(f) + rf_dlog(g));
  }
}

TEST_CASE("property: divisor degree is zero") {
  std::mt19937_64 rng(77);
  for (int k = 0; k < 60; ++k) {
    RationalFunction f = testsupport::random_factored_rf(rng, 4);
    if (f.is_constant()) continue;
    DivisorList d = rf_zeros_poles(f);
    CHECK(d.exact());
    CHECK(d.degree() == 0);
  }
  for (int k = 0; k < 20; ++k) {
    RationalFunction f = random_rf(rng, 4);
    if (f.is_constant()) continue;
    CHECK(rf_zeros_poles(f).degree() == 0);
  }
}

TEST_CASE("property: normalization preserves values") {
  std::mt19937_64 rng(5);
  Polynomial common = random_poly(rng, 2);
  for (int k = 0; k < 100; ++k) {
    Polynomial num = random_poly(rng, 3) * common;
    Polynomial den = random_poly(rng, 2) * common;
    RationalFunction f = rf_normalize(num, den);
    GaussRational x = small_gauss(rng);
    GaussRational dv = den.eval(x);
    if (dv.is_zero()) continue;
    auto v = f.eval(x);
    REQUIRE(v);
    CHECK(*v == num.eval(x) / dv);
  }
}

TEST_CASE("expression parser") {
  ParamTable params{{"a", GaussRational(Rational(2, 5))}};
  CHECK(parse_expression("1 - a/t", params) == P("(5*t-2)/(5*t)"));
  CHECK(parse_expression("1 \xE2\x88\x92 a/t", params) == P("1-(2/5)/t"));
  CHECK(parse_expression("t^-2") == P("1/(t*t)"));
  CHECK(parse_expression("(1+i)^2") == RationalFunction(GaussRational(0, 2)));
  CHECK(parse_constant("1/2+1/3*i") == GaussRational(Rational(1, 2), Rational(1, 3)));
  try {
    parse_expression("1\xE2\x88\x92" "a//t", params);
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
    CHECK(e.line() == 1);
    CHECK(e.column() == 5);
  }
  CHECK_THROWS_AS(parse_expression("1 - b/t", params), Error);
  CHECK_THROWS_AS(parse_constant("t+1"), Error);
  CHECK_THROWS_AS(parse_expression("1/(t-t)"), Error);
}

TEST_CASE("to_expr round-trips through the parser") {
  std::mt19937_64 rng(99);
  for (int k = 0; k < 50; ++k) {
    RationalFunction f = random_rf(rng, 4);
    CHECK(parse_expression(f.to_expr()) == f);
  }
}
