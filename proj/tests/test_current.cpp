#include "doctest.h"

#include "cubereg/current.hpp"
#include "cubereg/error.hpp"
#include "test_support.hpp"

#include <algorithm>
#include <random>

using namespace cubereg;
using testsupport::random_expr;
using testsupport::random_factor;

namespace {

using K = FactorKind;

CurrentExpr mono(long c, int twist, std::vector<Factor> f) { return CurrentExpr::monomial(Rational(c), twist, f); }

// Parity of the permutation taking `from` to sorted order, restricted to odd factors, via cycle counting.
int odd_permutation_sign(const std::vector<Factor>& from) {
  std::vector<Factor> odd;
  for (const auto& f : from)
    if (factor_degree(f.kind) % 2 == 1) odd.push_back(f);
  std::vector<Factor> sorted = odd;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return 0;
  std::vector<size_t> perm(odd.size());
  for (size_t i = 0; i < odd.size(); ++i)
    perm[i] = static_cast<size_t>(std::lower_bound(sorted.begin(), sorted.end(), odd[i]) - sorted.begin());
  std::vector<bool> seen(odd.size(), false);
  int sign = 1;
  for (size_t i = 0; i < odd.size(); ++i) {
    if (seen[i]) continue;
    size_t len = 0;
    for (size_t j = i; !seen[j]; j = perm[j]) {
      seen[j] = true;
      ++len;
    }
    if (len % 2 == 0) sign = -sign;
  }
  return sign;
}

CurrentExpr random_homogeneous(std::mt19937_64& rng, int n) {
  for (;;) {
    CurrentExpr e = random_expr(rng, n, 1);
    if (!e.is_zero()) return e;
  }
}

}  // namespace

TEST_CASE("build_R small cases") {
  CHECK(build_R(1) == current_log(1));
  CHECK(build_R(2) == current_log(1) * current_dlog(2) - (current_log(2) * current_cut(1)).twisted(1));
  CHECK(build_R(2).to_string() == "log z1·dlog z2 - 2πi·log z2·δ_{T_{z1}}");
  auto t3 = build_R(3).terms();
  REQUIRE(t3.size() == 3);
  for (size_t k = 0; k < 3; ++k) {
    CHECK(t3[k].coeff == 1);
  }
  std::vector<int> twists;
  for (const auto& t : t3) twists.push_back(t.twist);
  std::sort(twists.begin(), twists.end());
  CHECK(twists == std::vector<int>{0, 1, 2});
  CHECK(build_R(std::vector<int>{}).is_zero());
  CHECK(build_Omega(std::vector<int>{}) == CurrentExpr::one());
}

TEST_CASE("build_R sign pattern") {
  for (int n = 1; n <= 6; ++n) {
    auto terms = build_R(n).terms();
    REQUIRE(terms.size() == static_cast<size_t>(n));
    for (const auto& t : terms) {
      int k = t.twist + 1;
      Rational expected = ((n - 1) * (k - 1)) % 2 ? Rational(-1) : Rational(1);
      CHECK(t.coeff == expected);
      CHECK(t.degree() == n - 1);
    }
  }
}

TEST_CASE("Koszul signs in the normal form") {
  CHECK(mono(1, 0, {{K::Dlog, 2}, {K::Dlog, 1}}) == -mono(1, 0, {{K::Dlog, 1}, {K::Dlog, 2}}));
  CHECK(mono(1, 0, {{K::Dlog, 1}, {K::Dlog, 1}}).is_zero());
  CHECK(mono(1, 0, {{K::Cut, 3}, {K::Cut, 3}}).is_zero());
  CHECK(mono(1, 0, {{K::Log, 1}, {K::Log, 1}}).size() == 1);
  CHECK(mono(1, 0, {{K::Face, 2}, {K::Dlog, 1}}) == mono(1, 0, {{K::Dlog, 1}, {K::Face, 2}}));
  CHECK(mono(1, 0, {{K::Cut, 1}, {K::Dlog, 2}}) == -mono(1, 0, {{K::Dlog, 2}, {K::Cut, 1}}));
}

TEST_CASE("d on generators") {
  CHECK(d_current(build_R(1)) == build_Omega(1) - build_T(1).twisted(1));
  CHECK(d_current(current_dlog(3)) == current_face(3).twisted(1));
  CHECK(d_current(current_cut(2)) == current_face(2));
  CHECK(d_current(current_face(1)).is_zero());
  CHECK(d_current(CurrentExpr::one()).is_zero());
}

TEST_CASE("d R^2 expanded by hand") {
  // d(L1 w2) = w1 w2 - 2πi t1 w2 + 2πi L1 f2
  // d(-2πi L2 t1) = -2πi w2 t1 + (2πi)^2 t2 t1 - 2πi L2 f1
  CurrentExpr hand = build_Omega(2) - build_T(2).twisted(2) + (current_log(1) * current_face(2)).twisted(1) -
                     (current_log(2) * current_face(1)).twisted(1);
  CHECK(d_current(build_R(2)) == hand);
  CHECK(expected_dR(2) == hand);
}

TEST_CASE("d Omega^n face expansion") {
  for (int n = 1; n <= 4; ++n) {
    CHECK(d_current(build_Omega(n)) == expected_dOmega(n));
    CHECK(d_current(d_current(build_R(n))).is_zero());
  }
  CHECK(expected_dOmega(1) == current_face(1).twisted(1));
  CHECK(expected_dOmega(2) == (current_dlog(2) * current_face(1) - current_dlog(1) * current_face(2)).twisted(1));
}

TEST_CASE("structural identities for n = 1..6") {
  for (int n = 1; n <= 6; ++n) {
    IdentityReport r = verify_current_identities(n);
    INFO("n = " << n);
    for (const auto& l : r.lines) INFO(l);
    CHECK(r.ok);
  }
}

TEST_CASE("chain model of the cut cube") {
  Chain b1 = chain_boundary(chain_T(1));
  CHECK(b1 == Chain{{{CellSlot::Zero}, 1}, {{CellSlot::Infinity}, -1}});
  Chain b2 = chain_boundary(chain_T(2));
  Chain hand{{{CellSlot::Zero, CellSlot::Interval}, 1},
             {{CellSlot::Infinity, CellSlot::Interval}, -1},
             {{CellSlot::Interval, CellSlot::Zero}, -1},
             {{CellSlot::Interval, CellSlot::Infinity}, 1}};
  CHECK(b2 == hand);
  for (int n = 1; n <= 6; ++n) CHECK(chain_boundary(chain_boundary(chain_T(n))).empty());
}

TEST_CASE("product formula") {
  CHECK(product_formula_check(1, 1).ok);
  CHECK(product_formula_check(0, 3).ok);
  CHECK(product_formula_check(2, 2).ok);
  // (1,1) by hand: R^2 = -2πi t1 L2 + L1 w2.
  CHECK(build_R(2) == -(current_cut(1) * current_log(2)).twisted(1) + current_log(1) * current_dlog(2));
  for (int total = 0; total <= 6; ++total)
    for (int l = 0; l <= total; ++l) {
      INFO("l = " << l << ", n = " << total - l);
      CHECK(product_formula_check(l, total - l).ok);
    }
}

TEST_CASE("cup product table entries") {
  DeligneTriple chain_only{1, current_cut(1).twisted(1), CurrentExpr(), CurrentExpr()};
  DeligneTriple r_only{1, CurrentExpr(), CurrentExpr(), current_log(2)};
  // chain x R-part with alpha = 0 keeps a_p·c_q.
  DeligneTriple cr = cup_triple(chain_only, r_only, Rational(0));
  CHECK(cr.a.is_zero());
  CHECK(cr.b.is_zero());
  CHECK(cr.c.is_zero() == false);
  CHECK(cr.c == -(current_cut(1) * current_log(2)).twisted(1));
  // R-part x chain with alpha = 0 vanishes.
  DeligneTriple chain2{1, current_cut(2).twisted(1), CurrentExpr(), CurrentExpr()};
  DeligneTriple r1{1, CurrentExpr(), CurrentExpr(), current_log(1)};
  CHECK(cup_triple(r1, chain2, Rational(0)).c.is_zero());
  CHECK(cup_triple(r1, chain2, Rational(1)).c == (current_log(1) * current_cut(2)).twisted(1));
  // Degree-two chain part: the table entry carries no extra sign.
  DeligneTriple even{2, build_T(2).twisted(2), CurrentExpr(), CurrentExpr()};
  DeligneTriple r3{1, CurrentExpr(), CurrentExpr(), current_log(3)};
  CHECK(cup_triple(even, r3, Rational(0)).c == (build_T(2) * current_log(3)).twisted(2));
  CHECK(cup_triple(r3, even, Rational(0)).c.is_zero());
}

TEST_CASE("cup product degree checks") {
  DeligneTriple bad{1, current_cut(1), current_dlog(1) * current_dlog(2), CurrentExpr()};
  CHECK_THROWS_AS(cup_triple(bad, level_one_triple(3), Rational(0)), Error);
  DeligneTriple mixed{1, current_cut(1) + current_face(2), CurrentExpr(), CurrentExpr()};
  try {
    mixed.degree();
    FAIL("expected DegreeMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegreeMismatch);
  }
  CHECK(level_one_triple(1).degree() == 1);
}

TEST_CASE("iterated cup of level-one triples gives (T, Omega, R)") {
  for (int n = 1; n <= 4; ++n) {
    DeligneTriple x = iterated_cup(n);
    CHECK(x.level == n);
    CHECK(x.a == build_T(n).twisted(n));
    CHECK(x.b == build_Omega(n));
    CHECK(x.c == build_R(n));
    // D x has only face terms left in its last slot.
    DeligneTriple dx = cone_d(x);
    CHECK(dx.c == d_current(build_R(n)) - build_Omega(n) + build_T(n).twisted(n));
  }
}

TEST_CASE("alpha dependence is a cone boundary") {
  IdentityReport r = cup_homotopy_check();
  CHECK(r.ok);
  DeligneTriple x = level_one_triple(1), y = level_one_triple(2);
  DeligneTriple c0 = cup_triple(x, y, Rational(0)), c1 = cup_triple(x, y, Rational(1));
  CHECK_FALSE(c0 == c1);
  CHECK(c0.a == c1.a);
  CHECK(c0.b == c1.b);
  // The difference of the R parts is d(log z1 log z2) restricted to the non-face terms.
  CHECK(c0.c - c1.c == d_current(current_log(1) * current_log(2)));
}

TEST_CASE("property: normal form is canonical under shuffles") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Factor> f;
    int k = static_cast<int>(rng() % 6);
    for (int j = 0; j < k; ++j) f.push_back(random_factor(rng, 4));
    std::vector<Factor> g = f;
    std::shuffle(g.begin(), g.end(), rng);
    CurrentExpr ef = CurrentExpr::monomial(Rational(1), 0, f);
    CurrentExpr eg = CurrentExpr::monomial(Rational(1), 0, g);
    int sf = odd_permutation_sign(f), sg = odd_permutation_sign(g);
    CHECK((sf == 0) == ef.is_zero());
    if (sf != 0) CHECK(Rational(sf) * ef == Rational(sg) * eg);
  }
  // Term-list order does not matter either.
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<CurrentExpr> parts;
    for (int j = 0; j < 5; ++j) parts.push_back(random_expr(rng, 4, 2));
    CurrentExpr a, b;
    for (const auto& p : parts) a += p;
    std::shuffle(parts.begin(), parts.end(), rng);
    for (const auto& p : parts) b += p;
    CHECK(a == b);
  }
}

TEST_CASE("property: d is linear and squares to zero") {
  std::mt19937_64 rng(4242);
  for (int trial = 0; trial < 200; ++trial) {
    CurrentExpr x = random_expr(rng, 5, 4), y = random_expr(rng, 5, 4);
    Rational s(static_cast<long>(rng() % 7) - 3, 1 + static_cast<long>(rng() % 4));
    CHECK(d_current(d_current(x)).is_zero());
    CHECK(d_current(x + s * y) == d_current(x) + s * d_current(y));
  }
}

TEST_CASE("property: graded Leibniz rule and graded commutativity") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    CurrentExpr x = random_homogeneous(rng, 4), y = random_homogeneous(rng, 4);
    int dx = *x.degree(), dy = *y.degree();
    Rational sx = dx % 2 ? Rational(-1) : Rational(1);
    CHECK(d_current(x * y) == d_current(x) * y + sx * (x * d_current(y)));
    Rational sxy = (dx * dy) % 2 ? Rational(-1) : Rational(1);
    CHECK(x * y == sxy * (y * x));
  }
}
