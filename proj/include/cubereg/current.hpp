#pragma once

#include "cubereg/gauss_rational.hpp"

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace cubereg {

// Generators, per box coordinate j:
//   log z_j (degree 0), dlog z_j (1), delta on T_{z_j} (1), face marker delta_{(z_j)} (2).
// d log = dlog - 2 pi i delta_T, d dlog = 2 pi i face, d delta_T = face, d face = 0.
enum class FactorKind { Log = 0, Dlog = 1, Cut = 2, Face = 3 };

struct Factor {
  FactorKind kind;
  int index;  // 1-based coordinate
  friend bool operator<(const Factor& a, const Factor& b) {
    return std::tie(a.kind, a.index) < std::tie(b.kind, b.index);
  }
  friend bool operator==(const Factor& a, const Factor& b) { return a.kind == b.kind && a.index == b.index; }
};

int factor_degree(FactorKind k);

struct CurrentTerm {
  Rational coeff;
  int twist = 0;  // factor (2 pi i)^twist
  std::vector<int> logs;   // multiset, sorted
  std::vector<int> dlogs;  // sorted, distinct
  std::vector<int> cuts;   // sorted, distinct
  std::vector<int> faces;  // sorted
  int degree() const;
  std::vector<Factor> factors() const;  // canonical order
};

class CurrentExpr {
 public:
  using Key = std::tuple<int, std::vector<int>, std::vector<int>, std::vector<int>, std::vector<int>>;

  CurrentExpr() = default;
  static CurrentExpr one();
  // Product of the factors in the given order, brought to normal form with its Koszul sign.
  static CurrentExpr monomial(const Rational& coeff, int twist, const std::vector<Factor>& factors);

  bool is_zero() const { return terms_.empty(); }
  std::vector<CurrentTerm> terms() const;
  size_t size() const { return terms_.size(); }
  // Common degree of all terms; nullopt for zero or mixed degree.
  std::optional<int> degree() const;

  CurrentExpr& operator+=(const CurrentExpr& o);
  friend CurrentExpr operator+(CurrentExpr a, const CurrentExpr& b) { return a += b; }
  friend CurrentExpr operator-(CurrentExpr a, const CurrentExpr& b) { return a += (-b); }
  CurrentExpr operator-() const;
  friend CurrentExpr operator*(const Rational& s, const CurrentExpr& e);
  // Multiply by (2 pi i)^k.
  CurrentExpr twisted(int k) const;
  // Graded-commutative product.
  friend CurrentExpr operator*(const CurrentExpr& a, const CurrentExpr& b);
  friend bool operator==(const CurrentExpr& a, const CurrentExpr& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const CurrentExpr& a, const CurrentExpr& b) { return !(a == b); }

  std::string to_string() const;

 private:
  void add_term(const Key& key, const Rational& coeff);
  std::map<Key, Rational> terms_;
};

CurrentExpr current_log(int j);
CurrentExpr current_dlog(int j);
CurrentExpr current_cut(int j);
CurrentExpr current_face(int j);

CurrentExpr d_current(const CurrentExpr& e);

// R, Omega and delta_T on the listed coordinates (1-based, in order). R of no coordinates is 0.
CurrentExpr build_R(const std::vector<int>& coords);
CurrentExpr build_Omega(const std::vector<int>& coords);
CurrentExpr build_T(const std::vector<int>& coords);
CurrentExpr build_R(int n);
CurrentExpr build_Omega(int n);
CurrentExpr build_T(int n);

// Right-hand sides of the structural identities. Face terms carry the sign (-1)^(i-1), the same
// boundary orientation as the cycle boundary.
CurrentExpr expected_dR(int n);
CurrentExpr expected_dOmega(int n);

struct IdentityReport {
  bool ok = true;
  std::vector<std::string> lines;
};

// d R^n, d Omega^n, d^2 = 0, and the chain-level boundary of T^n in the cube-of-intervals model.
IdentityReport verify_current_identities(int n);
// R^{l+n}(w; y) = (-1)^l (2 pi i)^l delta_{T(w)} R^n(y) + R^l(w) Omega^n(y).
IdentityReport product_formula_check(int l, int n);

// Chain model of T^n: each coordinate is the interval I (oriented from inf to 0), or one of its ends.
enum class CellSlot { Interval, Zero, Infinity };
using Cell = std::vector<CellSlot>;
using Chain = std::map<Cell, long>;
Chain chain_T(int n);
Chain chain_boundary(const Chain& c);
// Sum over i of (-1)^(i-1) (rho_i^0 - rho_i^inf) T^{n-1}.
Chain chain_face_sum(int n);
// Cells with one end slot become delta_T on the interval slots times the face marker of the end slot.
std::optional<CurrentExpr> chain_to_current(const Chain& c);

// (a, b, c): chain part, form part, and the R part of degree one lower.
struct DeligneTriple {
  int level = 0;
  CurrentExpr a, b, c;
  // Degree of a and b; throws DegreeMismatch when inconsistent.
  int degree() const;
};

// (2 pi i delta_{T_j}, dlog z_j, log z_j).
DeligneTriple level_one_triple(int j);
// D(a, b, c) = (-da, -db, dc - b + a).
DeligneTriple cone_d(const DeligneTriple& x);
DeligneTriple cup_triple(const DeligneTriple& x, const DeligneTriple& y, const Rational& alpha);
DeligneTriple triple_sum(const DeligneTriple& x, const DeligneTriple& y, const Rational& s = Rational(1));
bool operator==(const DeligneTriple& x, const DeligneTriple& y);

// Iterated alpha = 0 cup of the level-one triples for coordinates 1..n.
DeligneTriple iterated_cup(int n, const Rational& alpha = Rational(0));
// x cup_0 y - x cup_1 y = D(0, 0, (-1)^(k-1) c c') for the level-one triples of coordinates 1, 2.
IdentityReport cup_homotopy_check();

}  // namespace cubereg
