#include "cubereg/regulator.hpp"

#include "cubereg/error.hpp"
#include "cubereg/numeric.hpp"
#include "cubereg/special.hpp"
#include "cubereg/tracker.hpp"

#include <boost/math/tools/toms748_solve.hpp>

#include <algorithm>
#include <cmath>

namespace cubereg {

using cd = std::complex<double>;

namespace {

double to_double(const Rational& q) { return q.convert_to<double>(); }

int side_of(cd z, double theta) { return (z * std::polar(1.0, -theta)).imag() >= 0.0 ? 1 : -1; }

// Splits [a, b] at the sorted interior points of `cuts`.
std::vector<std::pair<double, double>> split(double a, double b, std::vector<double> cuts) {
  std::sort(cuts.begin(), cuts.end());
  std::vector<std::pair<double, double>> out;
  double lo = a;
  for (double c : cuts) {
    if (c <= lo || c >= b) continue;
    out.emplace_back(lo, c);
    lo = c;
  }
  out.emplace_back(lo, b);
  return out;
}

}  // namespace

cd lattice_generator(int p) { return std::pow(kTwoPiI, p); }

RegulatorValue reduce_mod_lattice(const RegulatorValue& v) {
  RegulatorValue out = v;
  const double L = std::pow(2.0 * kPi, v.lattice);
  if (v.lattice % 2 != 0) {
    double y = v.value.imag() - L * std::round(v.value.imag() / L);
    if (y <= -L / 2) y += L;
    out.value = {v.value.real(), y};
  } else {
    double x = v.value.real() - L * std::floor(v.value.real() / L);
    if (x >= L) x -= L;
    out.value = {x, v.value.imag()};
  }
  return out;
}

std::optional<cd> alternate_representative(const RegulatorValue& v, double seam) {
  RegulatorValue r = reduce_mod_lattice(v);
  const double L = std::pow(2.0 * kPi, v.lattice);
  if (v.lattice % 2 != 0) {
    double y = r.value.imag();
    if (y > L / 2 - seam) return cd(r.value.real(), y - L);
    if (y < -L / 2 + seam) return cd(r.value.real(), y + L);
  } else {
    double x = r.value.real();
    if (x < seam) return cd(x + L, r.value.imag());
    if (x > L - seam) return cd(x - L, r.value.imag());
  }
  return std::nullopt;
}

double distance_mod_lattice(cd a, cd b, int p) {
  const double L = std::pow(2.0 * kPi, p);
  cd d = a - b;
  if (p % 2 != 0) return std::hypot(d.real(), d.imag() - L * std::round(d.imag() / L));
  return std::hypot(d.real() - L * std::round(d.real() / L), d.imag());
}

RegulatorValue aj_point_p1(const Cycle& z) {
  if (z.n() != 1) throw Error(ErrorCode::InadmissibleInput, "expected a 0-cycle in the 1-box");
  RegulatorValue v;
  v.lattice = 1;
  CompensatedSum acc;
  double scale = 0.0;
  for (const auto& term : z.terms()) {
    const auto* pt = std::get_if<BoxPoint>(&term.component);
    if (!pt || pt->coords.size() != 1) throw Error(ErrorCode::InadmissibleInput, "components must be points");
    if (pt->coords[0].is_zero()) throw Error(ErrorCode::OnBranchCut, "log of zero");
    cd l = to_double(term.coeff) * std::log(pt->coords[0].to_complex());
    acc.add(l);
    scale += std::abs(l);
  }
  v.value = acc.value();
  v.error = 1e-15 * (1.0 + scale);
  return v;
}

bool holomorphic_part_vanishes(const ParamCurve& c) {
  if (c.coords.size() != 3) throw Error(ErrorCode::InadmissibleInput, "expected a curve in the 3-box");
  RationalFunction a = rf_dlog(c.coords[1]), b = rf_dlog(c.coords[2]);
  return (a * b - b * a).is_zero();
}

ComponentBreakdown aj_component(const ParamCurve& c, const AjOptions& opt) {
  if (c.coords.size() != 3) throw Error(ErrorCode::InadmissibleInput, "expected a curve in the 3-box");
  if (opt.cuts.size() != 3) throw Error(ErrorCode::InadmissibleInput, "expected three cut angles");
  const RationalFunction &z1 = c.coords[0], &z2 = c.coords[1], &z3 = c.coords[2];
  const double th1 = opt.cuts[0], th2 = opt.cuts[1], th3 = opt.cuts[2];
  ComponentBreakdown out;
  out.label = c.label;
  if (auto k = z1.constant_value()) {
    cd w = k->to_complex() * std::polar(1.0, -th1);
    if (w.real() <= 0.0 && std::abs(w.imag()) <= cut_guard(w))
      throw Error(ErrorCode::TangentialCrossing, "constant first coordinate lies on its cut");
    return out;
  }
  std::vector<TArc> arcs = track_T(z1, th1);
  std::vector<CutCrossing> xs = arc_crossings(arcs, z2, th2, opt.tol);

  CompensatedSum integral, crossing;
  double err = 0.0;
  if (!z3.is_constant()) {
    for (const DivisorEntry& e : rf_zeros_poles(z3).entries) {
      if (e.location.infinite) continue;
      cd w = z1.eval(e.approx) * std::polar(1.0, -th1);
      if (std::isfinite(std::abs(w)) && w.real() < 0.0 && std::abs(w.imag()) <= 1e-9 * std::abs(w))
        throw Error(ErrorCode::TangentialCrossing, "third coordinate has a zero or pole inside T_{z1}");
    }
    for (size_t ai = 0; ai < arcs.size(); ++ai) {
      const TArc& arc = arcs[ai];
      double lo = arc.u_near_zero(1e-14), hi = arc.u_near_pole(1e-14);
      std::vector<double> breaks;
      for (const auto& x : xs)
        if (x.arc == static_cast<int>(ai)) breaks.push_back(x.param);
      for (auto [a, b] : split(lo, hi, breaks)) {
        int side = side_of(z2.eval(arc.point(0.5 * (a + b))), th2);
        auto integrand = [&](double u) -> cd {
          cd t = arc.point(u);
          return log_branch_side(z2.eval(t), th2, side) * z3.dlog_at(t) * arc.velocity_at(u, t);
        };
        QuadResult r = integrate_tanh_sinh(integrand, a, b, opt.tol);
        // Pole to zero runs towards decreasing u.
        integral.add(-r.value);
        err += r.error;
      }
    }
  }
  for (const auto& x : xs) {
    cd l = log_branch(z3.eval(x.t), th3);
    crossing.add(static_cast<double>(x.sign * opt.iterated_orientation) * l);
    err += 1e-12 * std::abs(l);
  }
  out.arc_integral = integral.value();
  out.crossing_sum = crossing.value();
  out.current_integral = kTwoPiI * out.arc_integral + kTwoPiI * kTwoPiI * out.crossing_sum;
  out.crossings = static_cast<int>(xs.size());
  out.error = 2.0 * kPi * err;
  return out;
}

AjResult aj_point_p2(const Cycle& z, const AjOptions& opt) {
  if (z.ambient() != Ambient::Point || z.n() != 3)
    throw Error(ErrorCode::InadmissibleInput, "expected a 1-cycle in the 3-box over a point");
  Cycle bd = boundary(z);
  if (!bd.empty()) throw Error(ErrorCode::NonClosedCycle, "boundary is " + bd.to_string());
  AdmissibilityReport adm = check_admissible(z);
  if (!adm.ok) throw Error(ErrorCode::InadmissibleInput, adm.violations.front());
  RealPositionReport rp = real_position_check(z, 1e-9, opt.cuts);
  if (!rp.ok) throw Error(ErrorCode::TangentialCrossing, rp.violations.front());

  AjResult res;
  res.value.lattice = 2;
  CompensatedSum acc;
  double err = 0.0;
  for (const auto& term : z.terms()) {
    const auto* pc = std::get_if<ParamCurve>(&term.component);
    if (!pc) throw Error(ErrorCode::InadmissibleInput, "components must be curves");
    if (!holomorphic_part_vanishes(*pc)) throw Error(ErrorCode::InadmissibleInput, "holomorphic part of R^3 is nonzero");
    ComponentBreakdown b = aj_component(*pc, opt);
    b.coeff = term.coeff;
    double c = to_double(term.coeff);
    // (1 / (-2 pi i)) * integral of R^3.
    acc.add(c * b.current_integral / (-kTwoPiI));
    err += std::abs(c) * b.error / (2.0 * kPi);
    res.components.push_back(b);
  }
  res.value.value = acc.value();
  res.value.error = err + 1e-13 * (1.0 + std::abs(res.value.value));
  res.value.diagnostics.push_back("(2,0) part of R^3 vanishes on every component");
  return res;
}

PairingBreakdown graph_loop_integral(const RationalFunction& f, const RationalFunction& g, const Loop& loop,
                                     const LoopOptions& opt) {
  check_loop_margin(loop, f);
  check_loop_margin(loop, g);
  PairingBreakdown out;
  std::vector<CutCrossing> xs = loop_cut_crossings(loop, f, opt.theta_f, opt.tol);
  CompensatedSum integral, crossing;
  double err = 0.0;
  if (!g.is_constant()) {
    std::vector<double> breaks;
    for (const auto& x : xs) breaks.push_back(x.param);
    for (auto [p0, p1] : loop.pieces()) {
      for (auto [a, b] : split(p0, p1, breaks)) {
        int side = side_of(f.eval(loop.point(0.5 * (a + b))), opt.theta_f);
        auto integrand = [&](double tau) -> cd {
          cd t = loop.point(tau);
          return log_branch_side(f.eval(t), opt.theta_f, side) * g.dlog_at(t) * loop.tangent(tau);
        };
        QuadResult r = integrate_gauss_kronrod(integrand, a, b, opt.tol);
        integral.add(r.value);
        err += r.error;
      }
    }
  }
  for (const auto& x : xs) {
    crossing.add(-kTwoPiI * static_cast<double>(x.sign) * log_branch_side(g.eval(x.t), opt.theta_g, 1));
    out.signed_crossings += x.sign;
  }
  out.integral = integral.value();
  out.crossing_term = crossing.value();
  out.crossings = static_cast<int>(xs.size());
  out.error = err + 1e-12 * (1.0 + std::abs(out.crossing_term));
  return out;
}

RegulatorValue loop_pairing_n2(const Cycle& z, const Loop& loop, const LoopOptions& opt) {
  if (z.ambient() != Ambient::P1 || z.n() != 2) throw Error(ErrorCode::InadmissibleInput, "expected a cycle over P1 with n = 2");
  Cycle bd = boundary(z);
  if (!bd.empty()) throw Error(ErrorCode::NonClosedCycle, "boundary is " + bd.to_string());
  RegulatorValue v;
  v.lattice = 2;
  CompensatedSum acc;
  for (const auto& term : z.terms()) {
    const auto* pc = std::get_if<ParamCurve>(&term.component);
    if (!pc) {
      v.diagnostics.push_back("vertical or point component contributes 0");
      continue;
    }
    PairingBreakdown b = graph_loop_integral(pc->coords.at(0), pc->coords.at(1), loop, opt);
    double c = to_double(term.coeff);
    acc.add(c * (b.integral + b.crossing_term));
    v.error += std::abs(c) * b.error;
  }
  v.value = acc.value();
  return v;
}

namespace {

// log f continued along the loop from its basepoint.
class ContinuedLog {
 public:
  ContinuedLog(const RationalFunction& f, const Loop& loop) : f_(f), loop_(loop) {
    cd f0 = f.eval(loop.basepoint());
    cd level = std::log(f0);
    for (auto [a, b] : loop.pieces()) {
      const int n0 = 32;
      for (int k = 0; k < n0; ++k) refine(a + (b - a) * k / n0, a + (b - a) * (k + 1) / n0, level, 0);
    }
  }

  struct Node {
    double a, b;
    cd fa;
    cd level;  // continued log f at a
  };
  const std::vector<Node>& nodes() const { return nodes_; }
  cd at(const Node& n, double tau) const { return n.level + std::log(f_.eval(loop_.point(tau)) / n.fa); }
  cd total() const { return total_; }

 private:
  void refine(double a, double b, cd& level, int depth) {
    cd fa = f_.eval(loop_.point(a));
    bool small = true;
    for (int j = 1; j <= 8 && small; ++j)
      small = std::abs(std::arg(f_.eval(loop_.point(a + (b - a) * j / 8)) / fa)) < 0.5;
    if (!small && depth < 40) {
      double m = 0.5 * (a + b);
      refine(a, m, level, depth + 1);
      refine(m, b, level, depth + 1);
      return;
    }
    nodes_.push_back({a, b, fa, level});
    level += std::log(f_.eval(loop_.point(b)) / fa);
    total_ = level;
  }

  const RationalFunction& f_;
  const Loop& loop_;
  std::vector<Node> nodes_;
  cd total_;
};

}  // namespace

RealRegulatorResult real_regulator_loop(const RationalFunction& f, const RationalFunction& g, const Loop& loop,
                                        double tol) {
  check_loop_margin(loop, f);
  check_loop_margin(loop, g);
  RealRegulatorResult out;
  double err = 0.0;

  CompensatedSum one_form;
  for (auto [a, b] : loop.pieces()) {
    auto integrand = [&](double tau) -> cd {
      cd t = loop.point(tau), dt = loop.tangent(tau);
      double darg_g = (g.dlog_at(t) * dt).imag(), darg_f = (f.dlog_at(t) * dt).imag();
      return std::log(std::abs(f.eval(t))) * darg_g - std::log(std::abs(g.eval(t))) * darg_f;
    };
    QuadResult r = integrate_gauss_kronrod(integrand, a, b, tol);
    one_form.add(r.value);
    err += r.error;
  }
  out.one_form = one_form.value().real();

  ContinuedLog cl(f, loop);
  CompensatedSum cont;
  for (const auto& node : cl.nodes()) {
    auto integrand = [&](double tau) -> cd {
      cd t = loop.point(tau);
      return cl.at(node, tau) * g.dlog_at(t) * loop.tangent(tau);
    };
    QuadResult r = integrate_gauss_kronrod(integrand, node.a, node.b, tol);
    cont.add(r.value);
    err += r.error;
  }
  cd jump = cl.total() - std::log(f.eval(loop.basepoint()));
  out.continuation = cont.value().imag() - std::log(std::abs(g.eval(loop.basepoint()))) * jump.imag();

  PairingBreakdown pb = graph_loop_integral(f, g, loop, {0.0, 0.0, tol});
  out.cut_crossing = (pb.integral + pb.crossing_term).imag();
  err += pb.error;
  out.error = err;
  return out;
}

RegulatorValue milnor_pair(const std::vector<RationalFunction>& symbol, const Loop& loop, const LoopOptions& opt) {
  if (symbol.size() != 2) throw Error(ErrorCode::InadmissibleInput, "Milnor pairing takes two functions");
  PairingBreakdown b = graph_loop_integral(symbol[0], symbol[1], loop, opt);
  RegulatorValue v;
  v.lattice = 2;
  v.value = b.integral + b.crossing_term;
  v.error = b.error;
  v.diagnostics.push_back("raw value; the quotient by Q(2) has no canonical representative, only Z(2) is reduced");
  return v;
}

RigidityReport rigidity_scan(const std::function<Cycle(const GaussRational&)>& family,
                             const std::vector<GaussRational>& values, const AjOptions& opt) {
  const std::vector<std::vector<double>> fallbacks{opt.cuts, {0.3, -0.2, 0.1}, {-0.25, 0.35, -0.15}, {0.5, 0.4, -0.3}};
  RigidityReport rep;
  for (const auto& a : values) {
    Cycle z = family(a);
    for (size_t k = 0; k < fallbacks.size(); ++k) {
      AjOptions o = opt;
      o.cuts = fallbacks[k];
      try {
        AjResult r = aj_point_p2(z, o);
        rep.rows.push_back({a.to_string(), r.value, o.cuts});
        break;
      } catch (const Error& e) {
        bool retry = e.code() == ErrorCode::TangentialCrossing || e.code() == ErrorCode::TrackingFailure;
        if (!retry || k + 1 == fallbacks.size()) throw;
      }
    }
  }
  for (size_t i = 0; i < rep.rows.size(); ++i)
    for (size_t j = i + 1; j < rep.rows.size(); ++j)
      rep.max_deviation = std::max(rep.max_deviation,
                                   distance_mod_lattice(rep.rows[i].value.value, rep.rows[j].value.value, 2));
  return rep;
}

double BumpForm::value(cd t) const {
  double s2 = std::norm(t - center) / (radius * radius);
  if (s2 >= 1.0) return 0.0;
  return amplitude * std::exp(-1.0 / (1.0 - s2));
}

cd BumpForm::dt(cd t) const {
  double s2 = std::norm(t - center) / (radius * radius);
  if (s2 >= 1.0) return 0.0;
  // d(s^2)/dt = conj(t - c) / rho^2.
  return value(t) * (-1.0 / ((1.0 - s2) * (1.0 - s2))) * std::conj(t - center) / (radius * radius);
}

namespace {

// Points where the arc meets the horizontal line Im t = y.
std::vector<double> arc_line_hits(const TArc& arc, double y) {
  std::vector<double> xs;
  const auto& s = arc.samples();
  for (size_t k = 0; k + 1 < s.size(); ++k) {
    double a = s[k].t.imag() - y, b = s[k + 1].t.imag() - y;
    if (a == 0.0) {
      xs.push_back(s[k].t.real());
      continue;
    }
    if (a * b > 0.0) continue;
    auto fn = [&](double u) { return arc.point(u).imag() - y; };
    boost::uintmax_t it = 60;
    auto bracket = boost::math::tools::toms748_solve(fn, s[k + 1].u, s[k].u, b, a,
                                                     boost::math::tools::eps_tolerance<double>(50), it);
    xs.push_back(arc.point(0.5 * (bracket.first + bracket.second)).real());
  }
  return xs;
}

}  // namespace

StokesReport stokes_cut_check(const RationalFunction& f, const BumpForm& eta, double tol) {
  StokesReport rep;
  if (eta.amplitude == 0.0 || eta.radius <= 0.0) return rep;
  if (f.is_constant()) throw Error(ErrorCode::ConstantFunction, "Stokes check needs a nonconstant function");
  const cd c = eta.center;
  const double rho = eta.radius;
  double err = 0.0;

  // Left side: f'/f = sum m_k / (t - p_k); each term in polar coordinates about p_k is bounded.
  CompensatedSum lhs;
  for (const DivisorEntry& e : rf_zeros_poles(f).entries) {
    if (e.location.infinite) continue;
    cd q = e.approx - c;
    double dist = std::abs(q);
    double th_lo = 0.0, th_hi = 2.0 * kPi;
    if (dist >= rho) {
      double mid = std::arg(-q), half = std::asin(rho / dist);
      th_lo = mid - half;
      th_hi = mid + half;
    }
    auto inner = [&](double th) -> cd {
      cd dir = std::polar(1.0, th);
      double b = (q * std::conj(dir)).real();
      double disc = b * b - (dist * dist - rho * rho);
      if (disc <= 0.0) return 0.0;
      double r1 = std::max(0.0, -b - std::sqrt(disc)), r2 = -b + std::sqrt(disc);
      if (r2 <= r1) return 0.0;
      QuadResult r = integrate_gauss_kronrod([&](double r) -> cd { return eta.value(e.approx + r * dir); }, r1, r2,
                                             tol, 10);
      return std::conj(dir) * r.value;
    };
    QuadResult outer = integrate_gauss_kronrod(inner, th_lo, th_hi, tol, 12);
    lhs.add(cd(0.0, -2.0) * static_cast<double>(e.multiplicity) * outer.value);
    err += 2.0 * std::abs(e.multiplicity) * outer.error;
  }
  rep.lhs = lhs.value();

  // Arc term: 2 pi i times the integral of phi dtbar along T_f, pole to zero.
  std::vector<TArc> arcs = track_T(f, 0.0);
  CompensatedSum arc_sum;
  for (const TArc& arc : arcs) {
    const auto& s = arc.samples();
    std::vector<double> us{arc.u_near_pole(1e-14)};
    for (const auto& smp : s) us.push_back(smp.u);
    us.push_back(arc.u_near_zero(1e-14));
    for (size_t k = 0; k + 1 < us.size(); ++k) {
      double ua = us[k], ub = us[k + 1];
      if (ua <= ub) continue;
      cd ta = arc.point(ua), tb = arc.point(ub);
      if (std::min(std::abs(ta - c), std::abs(tb - c)) - std::abs(ta - tb) >= rho) continue;
      auto integrand = [&](double u) -> cd {
        cd t = arc.point(u);
        return eta.value(t) * std::conj(arc.velocity_at(u, t));
      };
      QuadResult r = integrate_gauss_kronrod(integrand, ub, ua, tol, 12);
      arc_sum.add(-r.value);
      err += r.error;
    }
  }
  rep.arc_term = kTwoPiI * arc_sum.value();

  // d term: -integral of log f dphi ^ dtbar = 2i * integral of log f (dphi/dt) dx dy.
  auto row = [&](double y) -> cd {
    double h = y - c.imag();
    double w2 = rho * rho - h * h;
    if (w2 <= 0.0) return 0.0;
    double w = std::sqrt(w2);
    std::vector<double> breaks;
    for (const TArc& arc : arcs)
      for (double x : arc_line_hits(arc, y)) breaks.push_back(x);
    CompensatedSum acc;
    for (auto [a, b] : split(c.real() - w, c.real() + w, breaks)) {
      int side = side_of(f.eval(cd(0.5 * (a + b), y)), 0.0);
      auto integrand = [&](double x) -> cd {
        cd t(x, y);
        cd ft = f.eval(t);
        if (ft == 0.0) return 0.0;
        return log_branch_side(ft, 0.0, side) * eta.dt(t);
      };
      acc.add(integrate_gauss_kronrod(integrand, a, b, tol, 12).value);
    }
    return acc.value();
  };
  // Rows through a zero or pole can run along T_f, where the row integral jumps.
  std::vector<double> ybreaks;
  for (const DivisorEntry& e : rf_zeros_poles(f).entries)
    if (!e.location.infinite) ybreaks.push_back(e.approx.imag());
  CompensatedSum dsum;
  for (auto [a, b] : split(c.imag() - rho, c.imag() + rho, ybreaks)) {
    QuadResult d = integrate_gauss_kronrod(row, a, b, tol, 12);
    dsum.add(d.value);
    err += 2.0 * d.error;
  }
  rep.d_term = cd(0.0, 2.0) * dsum.value();

  rep.residual = std::abs(rep.lhs - rep.arc_term - rep.d_term);
  rep.error = err;
  return rep;
}

}  // namespace cubereg
