#include "cubereg/current.hpp"

#include "cubereg/error.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace cubereg {

int factor_degree(FactorKind k) {
  switch (k) {
    case FactorKind::Log:
      return 0;
    case FactorKind::Dlog:
    case FactorKind::Cut:
      return 1;
    case FactorKind::Face:
      return 2;
  }
  return 0;
}

int CurrentTerm::degree() const {
  return static_cast<int>(dlogs.size() + cuts.size() + 2 * faces.size());
}

std::vector<Factor> CurrentTerm::factors() const {
  std::vector<Factor> f;
  for (int j : logs) f.push_back({FactorKind::Log, j});
  for (int j : dlogs) f.push_back({FactorKind::Dlog, j});
  for (int j : cuts) f.push_back({FactorKind::Cut, j});
  for (int j : faces) f.push_back({FactorKind::Face, j});
  return f;
}

namespace {

bool odd(const Factor& f) { return factor_degree(f.kind) % 2 == 1; }

// Sorts into canonical order; returns the Koszul sign, or 0 if an odd generator repeats.
int canonical_sort(std::vector<Factor>& f) {
  int sign = 1;
  for (size_t i = 1; i < f.size(); ++i) {
    for (size_t j = i; j > 0 && f[j] < f[j - 1]; --j) {
      if (odd(f[j]) && odd(f[j - 1])) sign = -sign;
      std::swap(f[j], f[j - 1]);
    }
  }
  for (size_t i = 1; i < f.size(); ++i)
    if (f[i] == f[i - 1] && odd(f[i])) return 0;
  return sign;
}

CurrentExpr::Key key_of(int twist, const std::vector<Factor>& sorted) {
  std::vector<int> l, w, c, fc;
  for (const auto& x : sorted) {
    switch (x.kind) {
      case FactorKind::Log:
        l.push_back(x.index);
        break;
      case FactorKind::Dlog:
        w.push_back(x.index);
        break;
      case FactorKind::Cut:
        c.push_back(x.index);
        break;
      case FactorKind::Face:
        fc.push_back(x.index);
        break;
    }
  }
  return {twist, l, w, c, fc};
}

CurrentTerm term_of(const CurrentExpr::Key& k, const Rational& coeff) {
  CurrentTerm t;
  t.coeff = coeff;
  t.twist = std::get<0>(k);
  t.logs = std::get<1>(k);
  t.dlogs = std::get<2>(k);
  t.cuts = std::get<3>(k);
  t.faces = std::get<4>(k);
  return t;
}

}  // namespace

void CurrentExpr::add_term(const Key& key, const Rational& coeff) {
  if (coeff == 0) return;
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(key, coeff);
    return;
  }
  it->second += coeff;
  if (it->second == 0) terms_.erase(it);
}

CurrentExpr CurrentExpr::one() { return monomial(Rational(1), 0, {}); }

CurrentExpr CurrentExpr::monomial(const Rational& coeff, int twist, const std::vector<Factor>& factors) {
  CurrentExpr e;
  std::vector<Factor> f = factors;
  int sign = canonical_sort(f);
  if (sign != 0) e.add_term(key_of(twist, f), coeff * sign);
  return e;
}

std::vector<CurrentTerm> CurrentExpr::terms() const {
  std::vector<CurrentTerm> out;
  for (const auto& [k, c] : terms_) out.push_back(term_of(k, c));
  return out;
}

std::optional<int> CurrentExpr::degree() const {
  std::optional<int> d;
  for (const auto& t : terms()) {
    if (d && *d != t.degree()) return std::nullopt;
    d = t.degree();
  }
  return d;
}

CurrentExpr& CurrentExpr::operator+=(const CurrentExpr& o) {
  for (const auto& [k, c] : o.terms_) add_term(k, c);
  return *this;
}

CurrentExpr CurrentExpr::operator-() const {
  CurrentExpr e = *this;
  for (auto& kv : e.terms_) kv.second = -kv.second;
  return e;
}

CurrentExpr operator*(const Rational& s, const CurrentExpr& e) {
  CurrentExpr out;
  if (s == 0) return out;
  out = e;
  for (auto& kv : out.terms_) kv.second *= s;
  return out;
}

CurrentExpr CurrentExpr::twisted(int k) const {
  CurrentExpr out;
  for (const auto& [key, c] : terms_) {
    Key nk = key;
    std::get<0>(nk) += k;
    out.add_term(nk, c);
  }
  return out;
}

CurrentExpr operator*(const CurrentExpr& a, const CurrentExpr& b) {
  CurrentExpr out;
  for (const auto& [ka, ca] : a.terms_) {
    std::vector<Factor> fa = term_of(ka, ca).factors();
    for (const auto& [kb, cb] : b.terms_) {
      std::vector<Factor> f = fa;
      std::vector<Factor> fb = term_of(kb, cb).factors();
      f.insert(f.end(), fb.begin(), fb.end());
      out += CurrentExpr::monomial(ca * cb, std::get<0>(ka) + std::get<0>(kb), f);
    }
  }
  return out;
}

std::string CurrentExpr::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms()) {
    Rational c = t.coeff;
    bool neg = c < 0;
    if (neg) c = -c;
    os << (first ? (neg ? "-" : "") : (neg ? " - " : " + "));
    first = false;
    std::vector<std::string> parts;
    if (c != 1) parts.push_back(rational_to_string(c));
    if (t.twist == 1) parts.push_back("2πi");
    if (t.twist > 1) parts.push_back("(2πi)^" + std::to_string(t.twist));
    for (int j : t.logs) parts.push_back("log z" + std::to_string(j));
    if (!t.dlogs.empty()) {
      std::string s;
      for (size_t i = 0; i < t.dlogs.size(); ++i) s += (i ? " dlog z" : "dlog z") + std::to_string(t.dlogs[i]);
      parts.push_back(s);
    }
    if (!t.cuts.empty()) {
      std::vector<int> v = t.cuts;
      std::string s = "δ_{";
      for (size_t i = 0; i < v.size(); ++i) s += (i ? "∩T_{z" : "T_{z") + std::to_string(v[i]) + "}";
      parts.push_back(s + "}");
    }
    for (int j : t.faces) parts.push_back("δ_{(z" + std::to_string(j) + ")}");
    if (parts.empty()) parts.push_back("1");
    for (size_t i = 0; i < parts.size(); ++i) os << (i ? "·" : "") << parts[i];
  }
  return os.str();
}

CurrentExpr current_log(int j) { return CurrentExpr::monomial(Rational(1), 0, {{FactorKind::Log, j}}); }
CurrentExpr current_dlog(int j) { return CurrentExpr::monomial(Rational(1), 0, {{FactorKind::Dlog, j}}); }
CurrentExpr current_cut(int j) { return CurrentExpr::monomial(Rational(1), 0, {{FactorKind::Cut, j}}); }
CurrentExpr current_face(int j) { return CurrentExpr::monomial(Rational(1), 0, {{FactorKind::Face, j}}); }

CurrentExpr d_current(const CurrentExpr& e) {
  CurrentExpr out;
  for (const auto& t : e.terms()) {
    std::vector<Factor> f = t.factors();
    int odd_before = 0;
    for (size_t p = 0; p < f.size(); ++p) {
      Rational sign = (odd_before % 2) ? Rational(-1) : Rational(1);
      auto with = [&](Factor nf, const Rational& c, int tw) {
        std::vector<Factor> g = f;
        g[p] = nf;
        out += CurrentExpr::monomial(t.coeff * sign * c, t.twist + tw, g);
      };
      int j = f[p].index;
      switch (f[p].kind) {
        case FactorKind::Log:
          with({FactorKind::Dlog, j}, Rational(1), 0);
          with({FactorKind::Cut, j}, Rational(-1), 1);
          break;
        case FactorKind::Dlog:
          with({FactorKind::Face, j}, Rational(1), 1);
          break;
        case FactorKind::Cut:
          with({FactorKind::Face, j}, Rational(1), 0);
          break;
        case FactorKind::Face:
          break;
      }
      if (odd(f[p])) ++odd_before;
    }
  }
  return out;
}

namespace {

std::vector<int> range1(int n) {
  std::vector<int> v(static_cast<size_t>(std::max(n, 0)));
  std::iota(v.begin(), v.end(), 1);
  return v;
}

std::vector<int> without(const std::vector<int>& v, size_t i) {
  std::vector<int> w = v;
  w.erase(w.begin() + static_cast<long>(i));
  return w;
}

}  // namespace

CurrentExpr build_R(const std::vector<int>& coords) {
  const int n = static_cast<int>(coords.size());
  CurrentExpr out;
  // k-th term: ((-1)^(n-1) 2 pi i)^(k-1) log z_k dlog z_{k+1..n} delta_{T_1..T_{k-1}}.
  for (int k = 1; k <= n; ++k) {
    std::vector<Factor> f{{FactorKind::Log, coords[static_cast<size_t>(k - 1)]}};
    for (int i = k + 1; i <= n; ++i) f.push_back({FactorKind::Dlog, coords[static_cast<size_t>(i - 1)]});
    for (int i = 1; i < k; ++i) f.push_back({FactorKind::Cut, coords[static_cast<size_t>(i - 1)]});
    Rational sign = ((n - 1) % 2 == 1 && (k - 1) % 2 == 1) ? Rational(-1) : Rational(1);
    out += CurrentExpr::monomial(sign, k - 1, f);
  }
  return out;
}

CurrentExpr build_Omega(const std::vector<int>& coords) {
  std::vector<Factor> f;
  for (int j : coords) f.push_back({FactorKind::Dlog, j});
  return CurrentExpr::monomial(Rational(1), 0, f);
}

CurrentExpr build_T(const std::vector<int>& coords) {
  std::vector<Factor> f;
  for (int j : coords) f.push_back({FactorKind::Cut, j});
  return CurrentExpr::monomial(Rational(1), 0, f);
}

CurrentExpr build_R(int n) { return build_R(range1(n)); }
CurrentExpr build_Omega(int n) { return build_Omega(range1(n)); }
CurrentExpr build_T(int n) { return build_T(range1(n)); }

CurrentExpr expected_dR(int n) {
  std::vector<int> all = range1(n);
  CurrentExpr rhs = build_Omega(all) - build_T(all).twisted(n);
  for (int i = 1; i <= n; ++i) {
    Rational sign = (i % 2 == 1) ? Rational(1) : Rational(-1);
    rhs = rhs - (sign * (build_R(without(all, static_cast<size_t>(i - 1))) * current_face(i))).twisted(1);
  }
  return rhs;
}

CurrentExpr expected_dOmega(int n) {
  std::vector<int> all = range1(n);
  CurrentExpr rhs;
  for (int i = 1; i <= n; ++i) {
    Rational sign = (i % 2 == 1) ? Rational(1) : Rational(-1);
    rhs += (sign * (build_Omega(without(all, static_cast<size_t>(i - 1))) * current_face(i))).twisted(1);
  }
  return rhs;
}

Chain chain_T(int n) { return {{Cell(static_cast<size_t>(n), CellSlot::Interval), 1}}; }

Chain chain_boundary(const Chain& c) {
  Chain out;
  for (const auto& [cell, coeff] : c) {
    int intervals_before = 0;
    for (size_t i = 0; i < cell.size(); ++i) {
      if (cell[i] != CellSlot::Interval) continue;
      long sign = (intervals_before % 2) ? -1 : 1;
      // The interval runs from inf to 0: boundary {0} - {inf}.
      Cell z = cell, w = cell;
      z[i] = CellSlot::Zero;
      w[i] = CellSlot::Infinity;
      out[z] += sign * coeff;
      out[w] -= sign * coeff;
      ++intervals_before;
    }
  }
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

Chain chain_face_sum(int n) {
  Chain out;
  for (int i = 1; i <= n; ++i) {
    long sign = (i % 2 == 1) ? 1 : -1;
    Cell z(static_cast<size_t>(n), CellSlot::Interval), w = z;
    z[static_cast<size_t>(i - 1)] = CellSlot::Zero;
    w[static_cast<size_t>(i - 1)] = CellSlot::Infinity;
    out[z] += sign;
    out[w] -= sign;
  }
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

std::optional<CurrentExpr> chain_to_current(const Chain& c) {
  CurrentExpr out;
  for (const auto& [cell, coeff] : c) {
    std::vector<Factor> f;
    int ends = 0;
    size_t end_slot = 0;
    for (size_t i = 0; i < cell.size(); ++i) {
      if (cell[i] == CellSlot::Interval) {
        f.push_back({FactorKind::Cut, static_cast<int>(i + 1)});
      } else {
        ++ends;
        end_slot = i;
      }
    }
    if (ends != 1) return std::nullopt;
    // The Zero cell carries the marker; its Infinity partner must carry the opposite coefficient.
    if (cell[end_slot] == CellSlot::Infinity) {
      Cell partner = cell;
      partner[end_slot] = CellSlot::Zero;
      auto it = c.find(partner);
      if (it == c.end() || it->second != -coeff) return std::nullopt;
      continue;
    }
    f.push_back({FactorKind::Face, static_cast<int>(end_slot + 1)});
    out += CurrentExpr::monomial(Rational(coeff), 0, f);
  }
  return out;
}

IdentityReport verify_current_identities(int n) {
  IdentityReport rep;
  auto line = [&](bool ok, const std::string& what) {
    rep.ok = rep.ok && ok;
    rep.lines.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
  };
  CurrentExpr R = build_R(n), dR = d_current(R);
  line(dR == expected_dR(n), "d[R^" + std::to_string(n) + "] = Omega - (2πi)^n delta_T - 2πi Σ(-1)^(i-1) R(ẑ_i) δ_(z_i)");
  line(d_current(build_Omega(n)) == expected_dOmega(n), "d[Omega^" + std::to_string(n) + "] = 2πi Σ(-1)^(i-1) Omega(ẑ_i) δ_(z_i)");
  line(d_current(dR).is_zero(), "d d R^" + std::to_string(n) + " = 0");
  Chain bT = chain_boundary(chain_T(n));
  line(bT == chain_face_sum(n), "chain boundary of T^" + std::to_string(n) + " = Σ(-1)^(i-1)(rho_i^0 - rho_i^inf) T^(n-1)");
  line(chain_boundary(bT).empty(), "chain boundary squared of T^" + std::to_string(n) + " = 0");
  auto as_current = chain_to_current(bT);
  line(as_current && *as_current == d_current(build_T(n)), "d[delta_T^" + std::to_string(n) + "] = delta of the chain boundary");
  return rep;
}

IdentityReport product_formula_check(int l, int n) {
  IdentityReport rep;
  std::vector<int> w = range1(l), y;
  for (int j = 1; j <= n; ++j) y.push_back(l + j);
  std::vector<int> all = range1(l + n);
  Rational sign = (l % 2) ? Rational(-1) : Rational(1);
  CurrentExpr rhs = (sign * (build_T(w) * build_R(y))).twisted(l) + build_R(w) * build_Omega(y);
  bool ok = build_R(all) == rhs;
  rep.ok = ok;
  rep.lines.push_back(std::string(ok ? "ok   " : "FAIL ") + "R^" + std::to_string(l + n) + "(w;y) = (-1)^" +
                      std::to_string(l) + "(2πi)^" + std::to_string(l) + " delta_T(w) R^" + std::to_string(n) +
                      "(y) + R^" + std::to_string(l) + "(w) Omega^" + std::to_string(n) + "(y)");
  return rep;
}

int DeligneTriple::degree() const {
  auto da = a.degree(), db = b.degree(), dc = c.degree();
  if ((!a.is_zero() && !da) || (!b.is_zero() && !db) || (!c.is_zero() && !dc))
    throw Error(ErrorCode::DegreeMismatch, "triple component of mixed degree");
  std::optional<int> k;
  auto merge = [&](std::optional<int> d) {
    if (!d) return;
    if (k && *k != *d) throw Error(ErrorCode::DegreeMismatch, "triple components have inconsistent degrees");
    k = d;
  };
  merge(da);
  merge(db);
  if (dc) merge(*dc + 1);
  if (!k) return 0;
  return *k;
}

DeligneTriple level_one_triple(int j) { return {1, current_cut(j).twisted(1), current_dlog(j), current_log(j)}; }

DeligneTriple cone_d(const DeligneTriple& x) {
  return {x.level, -d_current(x.a), -d_current(x.b), d_current(x.c) - x.b + x.a};
}

DeligneTriple cup_triple(const DeligneTriple& x, const DeligneTriple& y, const Rational& alpha) {
  int k = x.degree();
  y.degree();
  Rational beta = Rational(1) - alpha;
  Rational koszul = (k % 2) ? Rational(-1) : Rational(1);
  DeligneTriple out;
  out.level = x.level + y.level;
  out.a = x.a * y.a;
  out.b = x.b * y.b;
  out.c = x.c * (alpha * y.a + beta * y.b) + koszul * ((beta * x.a + alpha * x.b) * y.c);
  return out;
}

DeligneTriple triple_sum(const DeligneTriple& x, const DeligneTriple& y, const Rational& s) {
  return {std::max(x.level, y.level), x.a + s * y.a, x.b + s * y.b, x.c + s * y.c};
}

bool operator==(const DeligneTriple& x, const DeligneTriple& y) { return x.a == y.a && x.b == y.b && x.c == y.c; }

DeligneTriple iterated_cup(int n, const Rational& alpha) {
  DeligneTriple acc = level_one_triple(1);
  for (int j = 2; j <= n; ++j) acc = cup_triple(acc, level_one_triple(j), alpha);
  return acc;
}

IdentityReport cup_homotopy_check() {
  IdentityReport rep;
  DeligneTriple x = level_one_triple(1), y = level_one_triple(2);
  DeligneTriple diff = triple_sum(cup_triple(x, y, Rational(0)), cup_triple(x, y, Rational(1)), Rational(-1));
  int k = x.degree();
  Rational sign = ((k - 1) % 2) ? Rational(-1) : Rational(1);
  DeligneTriple h{2, CurrentExpr(), CurrentExpr(), sign * (x.c * y.c)};
  bool ok = diff == cone_d(h);
  rep.ok = ok;
  rep.lines.push_back(std::string(ok ? "ok   " : "FAIL ") + "x ∪_0 y - x ∪_1 y = D(0, 0, log z1 log z2)");
  return rep;
}

}  // namespace cubereg
