#include "doctest.h"

#include "cubereg/cycle.hpp"
#include "cubereg/error.hpp"
#include "cubereg/expression.hpp"
#include "cubereg/special.hpp"
#include "cubereg/tracker.hpp"
#include "test_support.hpp"

#include <boost/multiprecision/cpp_complex.hpp>

#include <map>

using namespace cubereg;
using cd = std::complex<double>;
using testsupport::random_factored_rf;
using testsupport::random_rf;
using testsupport::endpoints_match;
using testsupport::track_rotating;

namespace {

RationalFunction P(const char* s) { return parse_expression(s); }

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::ParseError;
}

}  // namespace

TEST_CASE("T of an affine function is a real ray") {
  auto arcs = track_T(P("t-2/5"));
  REQUIRE(arcs.size() == 1);
  const TArc& a = arcs[0];
  CHECK(a.pole().location.infinite);
  CHECK(a.zero().location == Location::at(GaussRational(Rational(2, 5))));
  for (const auto& s : a.samples()) {
    CHECK(std::abs(s.t.imag()) < 1e-12);
    CHECK(s.t.real() <= 0.4 + 1e-12);
  }
  // f = -e^u gives t = 2/5 - e^u.
  for (double u : {-30.0, -5.0, 0.0, 3.3, 25.0}) CHECK(std::abs(a.point(u) - (0.4 - std::exp(u))) < 1e-12 * (1 + std::exp(u)));
  CHECK(a.samples().front().t.real() < a.samples().back().t.real());
}

TEST_CASE("T of t^2 is the imaginary axis, two arcs from infinity to 0") {
  auto arcs = track_T(P("t^2"));
  REQUIRE(arcs.size() == 2);
  int up = 0, down = 0;
  for (const auto& a : arcs) {
    CHECK(a.pole().location.infinite);
    CHECK(a.zero().location == Location::at(GaussRational(0)));
    for (const auto& s : a.samples()) CHECK(std::abs(s.t.real()) < 1e-12 * (1 + std::abs(s.t)));
    (a.point(0.0).imag() > 0 ? up : down)++;
    CHECK(std::abs(std::abs(a.point(0.0)) - 1.0) < 1e-12);
  }
  CHECK(up == 1);
  CHECK(down == 1);
}

TEST_CASE("T of 1 - a/t is the segment from 0 to a") {
  auto arcs = track_T(P("1-(2/5)/t"));
  REQUIRE(arcs.size() == 1);
  const TArc& a = arcs[0];
  CHECK(a.pole().location == Location::at(GaussRational(0)));
  CHECK(a.zero().location == Location::at(GaussRational(Rational(2, 5))));
  for (double u : {-35.0, -10.0, 0.0, 10.0, 35.0}) {
    cd t = a.point(u);
    CHECK(std::abs(t - 0.4 / (1 + std::exp(u))) < 1e-13);
  }
  CHECK(std::abs(a.point(a.u_near_zero(1e-14)) - 0.4) < 2e-14);
  CHECK(std::abs(a.point(a.u_near_pole(1e-14))) < 2e-14);
}

TEST_CASE("tracker errors") {
  CHECK(code_of([] { track_T(RationalFunction(GaussRational(3))); }) == ErrorCode::ConstantFunction);
  // f(inf) = -1 sits on the standard cut.
  CHECK(code_of([] { track_T(P("-(t-1/2)/(t+2)")); }) == ErrorCode::TrackingFailure);
  CHECK_NOTHROW(track_T(P("-(t-1/2)/(t+2)"), 0.2));
}

TEST_CASE("arc crossing examples") {
  auto arcs = track_T(P("1-(2/5)/t"));
  CHECK(arc_crossings(arcs, P("1-t"), 0.0).empty());

  auto sq = track_T(P("t^2"));
  CHECK(code_of([&] { arc_crossings(sq, P("t^2"), 0.0); }) == ErrorCode::TangentialCrossing);

  RationalFunction f = parse_expression("t-(1/2+i/3)");
  auto fa = track_T(f);
  CHECK(arc_crossings(fa, P("1-t"), 0.0).empty());

  // The ray Im t = 1/3 meets the positive imaginary axis (cut of t at angle -pi/2) once.
  auto cr = arc_crossings(fa, P("t"), -kPi / 2);
  REQUIRE(cr.size() == 1);
  CHECK(std::abs(cr[0].t - cd(0, 1.0 / 3)) < 1e-12);
  // Moving from -inf + i/3 toward the zero, Im(i t) = Re t increases.
  CHECK(cr[0].sign == 1);
}

TEST_CASE("crossings are polished: 50-digit re-evaluation") {
  namespace mp = boost::multiprecision;
  using hp = mp::cpp_complex_50;
  // Quadratic g with a cut crossing the arc of f somewhere generic.
  RationalFunction f = parse_expression("(t-(1/2+i/3))/(t+2)");
  RationalFunction g = parse_expression("(t-(1/3-i))*(t+(3/7+2*i/5))");
  for (double theta_g : {0.0, 1.1, -2.0, 2.9}) {
    auto arcs = track_T(f);
    for (const auto& c : arc_crossings(arcs, g, theta_g)) {
      hp t(c.t.real(), c.t.imag());
      hp g1 = (t - hp(mp::cpp_bin_float_50(1) / 3, -1)) *
              (t + hp(mp::cpp_bin_float_50(3) / 7, mp::cpp_bin_float_50(2) / 5));
      hp rot(mp::cos(mp::cpp_bin_float_50(-theta_g)), mp::sin(mp::cpp_bin_float_50(-theta_g)));
      hp G = g1 * rot;
      double im = static_cast<double>(G.imag()), mag = static_cast<double>(mp::abs(G));
      CHECK(std::abs(im) < 1e-10 * mag);
      CHECK(static_cast<double>(G.real()) < 0.0);
      // And the point is on T_f.
      cd w = f.eval(c.t) * std::polar(1.0, -arcs[static_cast<size_t>(c.arc)].theta());
      CHECK(std::abs(w.imag()) < 1e-10 * std::abs(w));
    }
  }
}

TEST_CASE("loop crossing examples") {
  auto c1 = loop_cut_crossings(Loop::circle(0.0, 1.0), P("t"), 0.0);
  REQUIRE(c1.size() == 1);
  CHECK(std::abs(c1[0].t - cd(-1.0, 0.0)) < 1e-12);
  CHECK(c1[0].sign == 1);

  auto c2 = loop_cut_crossings(Loop::circle(0.0, 0.5), P("t-3"), 0.0);
  CHECK(c2.size() == 2);
  int net2 = 0;
  for (const auto& c : c2) net2 += c.sign;
  CHECK(net2 == 0);

  auto c3 = loop_cut_crossings(Loop::circle(0.0, 2.0), P("t^2"), 0.0);
  int net3 = 0;
  for (const auto& c : c3) {
    net3 += c.sign;
    CHECK(std::abs(std::abs(c.t.imag()) - 2.0) < 1e-12);
  }
  CHECK(c3.size() == 2);
  CHECK(net3 == winding_number(Loop::circle(0.0, 2.0), P("t^2")));
  CHECK(net3 == 2);

  CHECK(code_of([] { loop_cut_crossings(Loop::circle(0.0, 1.0), P("t-1"), 0.0); }) == ErrorCode::TooCloseToSingularity);
}

TEST_CASE("property: arc endpoints reproduce the divisor (50 random functions)") {
  std::mt19937_64 rng(808);
  int rotated = 0;
  for (int k = 0; k < 50; ++k) {
    RationalFunction f = (k % 2 == 0) ? random_factored_rf(rng, 4) : random_rf(rng, 4);
    if (f.is_constant()) f = f + RationalFunction::variable();
    CAPTURE(f.to_expr());
    double theta = 0.0;
    auto arcs = track_rotating(f, theta);
    if (theta != 0.0) ++rotated;
    CHECK(endpoints_match(arcs, f));
    for (const auto& a : arcs) CHECK(a.residual() <= 1e-10);
  }
  MESSAGE("cut rotated for " << rotated << " of 50 functions");
}

TEST_CASE("property: signed loop crossings equal the winding number (100 pairs)") {
  std::mt19937_64 rng(909);
  std::uniform_real_distribution<double> c(-1.5, 1.5), r(0.2, 2.5);
  int tested = 0;
  while (tested < 100) {
    RationalFunction f = (tested % 2 == 0) ? random_factored_rf(rng, 4) : random_rf(rng, 4);
    if (f.is_constant()) continue;
    Loop loop = (tested % 5 == 4) ? Loop::polyline({cd(c(rng) - 2, -2), cd(2, c(rng) - 2), cd(2 + c(rng), 2), cd(-2, 2)})
                                  : Loop::circle(cd(c(rng), c(rng)), r(rng));
    int w;
    std::vector<CutCrossing> cr;
    try {
      w = winding_number(loop, f);
      cr = loop_cut_crossings(loop, f, 0.0);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::TooCloseToSingularity) continue;
      throw;
    }
    int net = 0;
    for (const auto& x : cr) net += x.sign;
    CAPTURE(f.to_expr());
    CAPTURE(loop.to_string());
    CHECK(net == w);
    ++tested;
  }
}

TEST_CASE("property: halving the continuation step does not move the arcs") {
  RationalFunction f = parse_expression("(t-1/3)*(t+i)^2/((t-2)*(t+1/2-i/4))");
  TrackOptions coarse, fine;
  fine.h_max = 0.05;
  auto a = track_T(f, 0.0, coarse), b = track_T(f, 0.0, fine);
  REQUIRE(a.size() == b.size());
  for (const auto& arc : a) {
    // Match by the point at u = 0.
    const TArc* best = nullptr;
    for (const auto& other : b)
      if (!best || std::abs(other.point(0.0) - arc.point(0.0)) < std::abs(best->point(0.0) - arc.point(0.0))) best = &other;
    for (const auto& s : arc.samples()) CHECK(std::abs(best->point(s.u) - s.t) < 10 * coarse.tol * (1 + std::abs(s.t)));
  }
}

TEST_CASE("property: small cut rotation moves arcs continuously") {
  RationalFunction f = parse_expression("(t-1/3)*(t+i)/((t-2)*(t+1/2-i/4))");
  auto a = track_T(f, 0.0), b = track_T(f, 1e-4);
  REQUIRE(a.size() == b.size());
  for (const auto& arc : a) {
    const TArc* best = nullptr;
    for (const auto& other : b)
      if (!best || std::abs(other.point(0.0) - arc.point(0.0)) < std::abs(best->point(0.0) - arc.point(0.0))) best = &other;
    CHECK(best->zero().location == arc.zero().location);
    CHECK(best->pole().location == arc.pole().location);
    for (double u = -15; u <= 15; u += 1.0) CHECK(std::abs(best->point(u) - arc.point(u)) < 1e-2 * (1 + std::abs(arc.point(u))));
  }
}

TEST_CASE("json dump") {
  std::string j = arcs_to_json(track_T(P("t-2/5")));
  CHECK(j.find("\"points\"") != std::string::npos);
  CHECK(j.find("\"zero\":\"2/5\"") != std::string::npos);
}

TEST_CASE("real position check") {
  Cycle v(Ambient::Point, 3);
  v.add(Rational(1), curve_V(GaussRational(Rational(2, 5))));
  CHECK(real_position_check(v).ok);

  GaussRational c(Rational(1, 2), Rational(1, 3));
  ParamCurve same{{RationalFunction::variable(), RationalFunction::variable(), RationalFunction(c)}, ""};
  Cycle z(Ambient::Point, 3);
  z.add(Rational(1), same);
  RealPositionReport rep = real_position_check(z);
  CHECK_FALSE(rep.ok);
  REQUIRE(!rep.violations.empty());
  CHECK(rep.violations.front().find("z1 and z2") != std::string::npos);

  // Unimodular alpha = (3 + 4i)/5.
  GaussRational alpha(Rational(3, 5), Rational(4, 5));
  Cycle moved = translate(z, {GaussRational(1), alpha, GaussRational(1)});
  CHECK(real_position_check(moved).ok);

  // (t, -t, c): a point where z1 and z2 meet their cuts would need t < 0 and t > 0; only the constant matters.
  ParamCurve neg{{RationalFunction::variable(), RationalFunction(GaussRational(-2)), parse_expression("t+3")}, ""};
  Cycle zn(Ambient::Point, 3);
  zn.add(Rational(1), neg);
  CHECK_FALSE(real_position_check(zn).ok);
}

TEST_CASE("crossings at the basepoint and at polyline vertices") {
  // The basepoint 1.1 maps onto the cut.
  RationalFunction f = parse_expression("(t-1/3)*(t+1/4)/(t-3)");
  Loop circle = Loop::circle(0.1, 1.0);
  CHECK(f.eval(circle.basepoint()).real() < 0.0);
  int net = 0;
  for (const auto& x : loop_cut_crossings(circle, f, 0.0)) net += x.sign;
  CHECK(net == winding_number(circle, f));
  CHECK(net == 2);
  // The square has its vertex -1 on the cut of t.
  Loop square = Loop::polyline({{1, -1}, {1, 1}, {-1, 1}, {-1, 0}, {-1, -1}});
  auto xs = loop_cut_crossings(square, parse_expression("t"), 0.0);
  REQUIRE(xs.size() == 1);
  CHECK(xs[0].sign == 1);
  CHECK(std::abs(xs[0].t - std::complex<double>(-1, 0)) < 1e-15);
}
