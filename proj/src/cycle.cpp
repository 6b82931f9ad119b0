#include "cubereg/cycle.hpp"

#include "cubereg/error.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace cubereg {

namespace {

std::string coords_key(const std::vector<RationalFunction>& coords) {
  std::string out;
  for (const auto& f : coords) out += f.to_expr() + ";";
  return out;
}

std::string point_coords(const std::vector<GaussRational>& coords) {
  std::string out = "(";
  for (size_t k = 0; k < coords.size(); ++k) out += (k ? ", " : "") + coords[k].to_string();
  return out + ")";
}

const ParamCurve* curve_of(const Component& c) {
  if (const auto* pc = std::get_if<ParamCurve>(&c)) return pc;
  if (const auto* vc = std::get_if<VerticalCurve>(&c)) return &vc->fiber;
  return nullptr;
}

struct FacePoint {
  int coord;  // 0-based
  Location t;
  int order;
  bool off_box;
  std::vector<std::optional<GaussRational>> values;  // all coordinates at t
};

std::vector<FacePoint> face_points(const ParamCurve& c) {
  std::vector<FacePoint> out;
  for (size_t i = 0; i < c.coords.size(); ++i) {
    if (c.coords[i].is_constant()) continue;
    DivisorList d = rf_zeros_poles(c.coords[i]);
    if (!d.exact())
      throw Error(ErrorCode::NonRationalFace,
                  "coordinate z" + std::to_string(i + 1) + " = " + c.coords[i].to_expr() +
                      " meets a face at a point outside Q(i)");
    for (const auto& e : d.entries) {
      FacePoint fp{static_cast<int>(i), e.location, e.multiplicity, false, {}};
      for (size_t j = 0; j < c.coords.size(); ++j) {
        fp.values.push_back(c.coords[j].eval(e.location));
        if (j != i && fp.values.back() && fp.values.back()->is_one()) fp.off_box = true;
      }
      out.push_back(std::move(fp));
    }
  }
  return out;
}

void check_curve(const ParamCurve& c, int n, const std::string& where, AdmissibilityReport& rep) {
  auto violate = [&](const std::string& msg) {
    rep.ok = false;
    rep.violations.push_back(where + ": " + msg);
  };
  if (static_cast<int>(c.coords.size()) != n) {
    violate("expected " + std::to_string(n) + " coordinates");
    return;
  }
  bool any_nonconstant = false;
  for (size_t i = 0; i < c.coords.size(); ++i) {
    auto cv = c.coords[i].constant_value();
    if (!cv) {
      any_nonconstant = true;
      continue;
    }
    if (cv->is_zero()) violate("coordinate z" + std::to_string(i + 1) + " identically 0");
    if (cv->is_one()) violate("coordinate z" + std::to_string(i + 1) + " identically 1");
  }
  if (!any_nonconstant) violate("all coordinates constant");
  if (!rep.ok) return;
  for (const auto& fp : face_points(c)) {
    std::string at = "t=" + fp.t.to_string();
    if (fp.off_box) {
      rep.notes.push_back(where + ": z" + std::to_string(fp.coord + 1) + " meets " + (fp.order > 0 ? "0" : "inf") + " at " + at +
                           " where another coordinate equals 1 (off the box)");
      continue;
    }
    for (size_t j = 0; j < fp.values.size(); ++j) {
      if (static_cast<int>(j) == fp.coord) continue;
      if (!fp.values[j] || fp.values[j]->is_zero())
        violate("coordinates z" + std::to_string(fp.coord + 1) + " and z" + std::to_string(j + 1) +
                " both lie in {0, inf} at " + at);
    }
  }
}

void check_point(const BoxPoint& p, int n, const std::string& where, AdmissibilityReport& rep) {
  if (static_cast<int>(p.coords.size()) != n) {
    rep.ok = false;
    rep.violations.push_back(where + ": expected " + std::to_string(n) + " coordinates");
    return;
  }
  for (size_t i = 0; i < p.coords.size(); ++i) {
    if (p.coords[i].is_zero() || p.coords[i].is_one()) {
      rep.ok = false;
      rep.violations.push_back(where + ": coordinate z" + std::to_string(i + 1) + " = " +
                               p.coords[i].to_string() + " lies on a face or off the box");
    }
  }
}

}  // namespace

std::string component_key(const Component& c) {
  if (const auto* pc = std::get_if<ParamCurve>(&c)) return "C|" + coords_key(pc->coords);
  if (const auto* bp = std::get_if<BoxPoint>(&c)) {
    std::string key = "P|" + (bp->base ? bp->base->to_string() : std::string("-")) + "|";
    for (const auto& v : bp->coords) key += v.to_string() + ";";
    return key;
  }
  const auto& vc = std::get<VerticalCurve>(c);
  return "V|" + vc.base.to_string() + "|" + coords_key(vc.fiber.coords);
}

std::string component_to_string(const Component& c) {
  if (const auto* pc = std::get_if<ParamCurve>(&c)) {
    std::string out = "curve(";
    for (size_t k = 0; k < pc->coords.size(); ++k) out += (k ? ", " : "") + pc->coords[k].to_expr();
    return out + ")";
  }
  if (const auto* bp = std::get_if<BoxPoint>(&c)) {
    std::string out = point_coords(bp->coords);
    return bp->base ? "[x=" + bp->base->to_string() + "] " + out : out;
  }
  const auto& vc = std::get<VerticalCurve>(c);
  return "[x=" + vc.base.to_string() + "] x " + component_to_string(Component(vc.fiber));
}

int component_dimension(const Component& c) { return std::holds_alternative<BoxPoint>(c) ? 0 : 1; }

void Cycle::add(const Rational& coeff, Component component) {
  terms_.push_back({coeff, std::move(component)});
}

void Cycle::normalize() {
  std::map<std::string, CycleTerm> merged;
  for (auto& term : terms_) {
    std::string key = component_key(term.component);
    auto it = merged.find(key);
    if (it == merged.end()) {
      merged.emplace(key, std::move(term));
    } else {
      it->second.coeff += term.coeff;
    }
  }
  terms_.clear();
  for (auto& [key, term] : merged)
    if (term.coeff != 0) terms_.push_back(std::move(term));
}

Cycle Cycle::operator-() const {
  Cycle out = *this;
  for (auto& t : out.terms_) t.coeff = -t.coeff;
  return out;
}

Cycle operator+(const Cycle& a, const Cycle& b) {
  Cycle out = a;
  if (out.terms_.empty() && out.n_ == 0) {
    out.ambient_ = b.ambient_;
    out.n_ = b.n_;
  }
  for (const auto& t : b.terms_) out.terms_.push_back(t);
  out.normalize();
  return out;
}

Cycle operator*(const Rational& s, const Cycle& c) {
  Cycle out = c;
  for (auto& t : out.terms_) t.coeff *= s;
  out.normalize();
  return out;
}

bool operator==(const Cycle& a, const Cycle& b) {
  Cycle x = a, y = b;
  x.normalize();
  y.normalize();
  if (x.n_ != y.n_ || x.terms_.size() != y.terms_.size()) return false;
  if (!x.terms_.empty() && x.ambient_ != y.ambient_) return false;
  for (size_t k = 0; k < x.terms_.size(); ++k) {
    if (x.terms_[k].coeff != y.terms_[k].coeff) return false;
    if (component_key(x.terms_[k].component) != component_key(y.terms_[k].component)) return false;
  }
  return true;
}

std::string Cycle::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& t : terms_) {
    Rational c = t.coeff;
    std::string sign = c < 0 ? "-" : "+";
    if (c < 0) c = -c;
    std::string coef = c == 1 ? "" : c.str() + "*";
    out += (out.empty() ? (sign == "-" ? "-" : "+") : " " + sign + " ") + coef + component_to_string(t.component);
  }
  return out;
}

AdmissibilityReport check_admissible(const Cycle& z) {
  AdmissibilityReport rep;
  for (size_t k = 0; k < z.terms().size(); ++k) {
    const Component& c = z.terms()[k].component;
    std::string where = "component " + std::to_string(k + 1);
    if (const auto* bp = std::get_if<BoxPoint>(&c)) {
      check_point(*bp, z.n(), where, rep);
    } else {
      if (z.ambient() == Ambient::Point && std::holds_alternative<VerticalCurve>(c)) {
        rep.ok = false;
        rep.violations.push_back(where + ": vertical components need ambient P1");
        continue;
      }
      check_curve(*curve_of(c), z.n(), where, rep);
    }
  }
  return rep;
}

Cycle boundary(const Cycle& z) {
  AdmissibilityReport rep = check_admissible(z);
  if (!rep.ok) throw Error(ErrorCode::InadmissibleInput, "boundary of an inadmissible cycle: " + rep.violations.front());
  Cycle out(z.ambient(), z.n() - 1);
  for (const auto& term : z.terms()) {
    const ParamCurve* curve = curve_of(term.component);
    if (!curve) continue;
    const auto* vc = std::get_if<VerticalCurve>(&term.component);
    for (const auto& fp : face_points(*curve)) {
      if (fp.off_box) continue;
      BoxPoint p;
      for (size_t j = 0; j < fp.values.size(); ++j)
        if (static_cast<int>(j) != fp.coord) p.coords.push_back(*fp.values[j]);
      if (vc) {
        p.base = vc->base;
      } else if (z.ambient() == Ambient::P1) {
        p.base = fp.t;
      }
      // (-1)^(i-1) (d_i^0 - d_i^inf), weighted by the order of z_i at t.
      int sign = (fp.coord % 2 == 0) ? 1 : -1;
      out.add(term.coeff * sign * fp.order, std::move(p));
    }
  }
  out.normalize();
  return out;
}

bool is_degenerate(const ParamCurve& c) {
  int nonconstant = 0;
  int degree = 0;
  for (const auto& f : c.coords) {
    if (f.is_constant()) continue;
    ++nonconstant;
    degree = f.degree();
  }
  return nonconstant == 1 && degree == 1;
}

Cycle permute(const Cycle& z, const std::vector<int>& perm) {
  Cycle out(z.ambient(), z.n());
  for (const auto& term : z.terms()) {
    Component c = term.component;
    if (auto* pc = std::get_if<ParamCurve>(&c)) {
      ParamCurve q = *pc;
      for (size_t k = 0; k < perm.size(); ++k) q.coords[k] = pc->coords[static_cast<size_t>(perm[k])];
      c = q;
    } else if (auto* bp = std::get_if<BoxPoint>(&c)) {
      BoxPoint q = *bp;
      for (size_t k = 0; k < perm.size(); ++k) q.coords[k] = bp->coords[static_cast<size_t>(perm[k])];
      c = q;
    } else {
      auto& vc = std::get<VerticalCurve>(c);
      VerticalCurve q = vc;
      for (size_t k = 0; k < perm.size(); ++k) q.fiber.coords[k] = vc.fiber.coords[static_cast<size_t>(perm[k])];
      c = q;
    }
    out.add(term.coeff, std::move(c));
  }
  out.normalize();
  return out;
}

static int permutation_sign(const std::vector<int>& perm) {
  int inversions = 0;
  for (size_t i = 0; i < perm.size(); ++i)
    for (size_t j = i + 1; j < perm.size(); ++j)
      if (perm[i] > perm[j]) ++inversions;
  return inversions % 2 ? -1 : 1;
}

Cycle alt(const Cycle& z) {
  if (z.ambient() != Ambient::Point) throw Error(ErrorCode::InadmissibleInput, "alt requires ambient pt");
  std::vector<int> perm(static_cast<size_t>(z.n()));
  std::iota(perm.begin(), perm.end(), 0);
  Integer factorial = 1;
  for (int k = 2; k <= z.n(); ++k) factorial *= k;
  Cycle out(z.ambient(), z.n());
  do {
    Rational w(permutation_sign(perm), factorial);
    out = out + w * permute(z, perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

Cycle translate(const Cycle& z, const std::vector<GaussRational>& tau, AdmissibilityReport* report) {
  if (static_cast<int>(tau.size()) != z.n())
    throw Error(ErrorCode::InadmissibleInput, "translation vector has the wrong length");
  for (const auto& a : tau)
    if (a.is_zero()) throw Error(ErrorCode::ZeroTranslation, "translation by zero");
  Cycle out(z.ambient(), z.n());
  for (const auto& term : z.terms()) {
    Component c = term.component;
    if (auto* pc = std::get_if<ParamCurve>(&c)) {
      for (size_t k = 0; k < tau.size(); ++k) pc->coords[k] = pc->coords[k] * RationalFunction(tau[k]);
    } else if (auto* bp = std::get_if<BoxPoint>(&c)) {
      for (size_t k = 0; k < tau.size(); ++k) bp->coords[k] *= tau[k];
    } else {
      auto& vc = std::get<VerticalCurve>(c);
      for (size_t k = 0; k < tau.size(); ++k) vc.fiber.coords[k] = vc.fiber.coords[k] * RationalFunction(tau[k]);
    }
    out.add(term.coeff, std::move(c));
  }
  out.normalize();
  if (report) *report = check_admissible(out);
  return out;
}

ParamCurve curve_V(const GaussRational& a) {
  RationalFunction t = RationalFunction::variable();
  return {{RationalFunction(1) - RationalFunction(a) / t, RationalFunction(1) - t, t}, "V(" + a.to_string() + ")"};
}

ParamCurve curve_W(const GaussRational& b) {
  RationalFunction t = RationalFunction::variable();
  return {{RationalFunction(1) - RationalFunction(b) / t, t, RationalFunction(1) - t}, "W(" + b.to_string() + ")"};
}

Cycle cycle_xi(const GaussRational& a) {
  Cycle z(Ambient::Point, 3);
  z.add(1, curve_V(a));
  z.add(-1, curve_W(GaussRational(1) - a));
  z.normalize();
  return z;
}

}  // namespace cubereg
