#include "cubereg/tracker.hpp"

#include "cubereg/error.hpp"
#include "cubereg/special.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/toms748_solve.hpp>
#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace cubereg {

using cd = std::complex<double>;

namespace detail {

struct ArcEquation {
  std::vector<cd> N, D, dN, dD;
  cd e;

  static cd horner(const std::vector<cd>& c, cd t) {
    cd r = 0.0;
    for (size_t k = c.size(); k-- > 0;) r = r * t + c[k];
    return r;
  }
  static std::vector<cd> deriv(const std::vector<cd>& c) {
    std::vector<cd> d;
    for (size_t k = 1; k < c.size(); ++k) d.push_back(static_cast<double>(k) * c[k]);
    return d;
  }

  // F(t, u) = N + s e D for u <= 0, D + s^{-1} conj(e) N for u > 0.
  void eval(double u, cd t, cd& F, cd& Ft) const {
    if (u <= 0.0) {
      cd se = std::exp(u) * e;
      F = horner(N, t) + se * horner(D, t);
      Ft = horner(dN, t) + se * horner(dD, t);
    } else {
      cd se = std::exp(-u) * std::conj(e);
      F = horner(D, t) + se * horner(N, t);
      Ft = horner(dD, t) + se * horner(dN, t);
    }
  }

  cd velocity(double u, cd t) const {
    cd F, Ft;
    eval(u, t, F, Ft);
    if (u <= 0.0) return -std::exp(u) * e * horner(D, t) / Ft;
    return std::exp(-u) * std::conj(e) * horner(N, t) / Ft;
  }

  cd f(cd t) const { return horner(N, t) / horner(D, t); }
};

}  // namespace detail

namespace {

// Taylor coefficients of the polynomial at z0.
std::vector<cd> taylor(std::vector<cd> a, cd z0) {
  size_t n = a.size();
  for (size_t i = 0; i + 1 < n; ++i)
    for (size_t k = n - 1; k-- > i;) a[k] += z0 * a[k + 1];
  return a;
}

bool newton_solve(const detail::ArcEquation& eq, double u, cd& t, int max_iter = 30) {
  for (int it = 0; it < max_iter; ++it) {
    cd F, Ft;
    eq.eval(u, t, F, Ft);
    if (Ft == 0.0 || !std::isfinite(std::abs(Ft))) return false;
    cd dt = F / Ft;
    t -= dt;
    if (!std::isfinite(std::abs(t))) return false;
    if (std::abs(dt) <= 1e-15 * (1.0 + std::abs(t))) return true;
  }
  cd F, Ft;
  eq.eval(u, t, F, Ft);
  return std::abs(F / Ft) <= 1e-12 * (1.0 + std::abs(t));
}

int sgn(double x) { return x > 0.0 ? 1 : -1; }

}  // namespace

cd TArc::newton(double u, cd t) const {
  cd guess = t;
  if (!newton_solve(*eq_, u, t)) return guess;
  return t;
}

cd TArc::tail_guess(double u) const {
  if (u < u_zero_end()) {
    const ArcSample& b = samples_.back();
    double m = zero_order();
    if (zero_.location.infinite) return b.t * std::exp(-(u - b.u) / m);
    return zero_.approx + (b.t - zero_.approx) * std::exp((u - b.u) / m);
  }
  const ArcSample& b = samples_.front();
  double m = pole_order();
  if (pole_.location.infinite) return b.t * std::exp((u - b.u) / m);
  return pole_.approx + (b.t - pole_.approx) * std::exp(-(u - b.u) / m);
}

cd TArc::point(double u) const {
  if (u < u_zero_end() || u > u_pole_end()) {
    cd g = tail_guess(u);
    cd t = newton(u, g);
    // Deep in a tail the expansion is already exact to rounding; reject a Newton jump to another branch.
    const Location& end = u < u_zero_end() ? zero_.location : pole_.location;
    cd ref = u < u_zero_end() ? zero_.approx : pole_.approx;
    double scale = end.infinite ? std::abs(g) : std::abs(g - ref);
    if (std::abs(t - g) > 0.5 * scale) return g;
    return t;
  }
  // Samples are ordered by decreasing u.
  auto it = std::lower_bound(samples_.begin(), samples_.end(), u,
                             [](const ArcSample& s, double v) { return s.u > v; });
  if (it == samples_.begin()) return samples_.front().t;
  if (it == samples_.end()) return samples_.back().t;
  const ArcSample& b = *it;
  const ArcSample& a = *(it - 1);
  if (b.u == u) return b.t;
  double h = a.u - b.u;
  double x = (u - b.u) / h;
  // Cubic Hermite on [b.u, a.u].
  double h00 = (1 + 2 * x) * (1 - x) * (1 - x), h10 = x * (1 - x) * (1 - x);
  double h01 = x * x * (3 - 2 * x), h11 = x * x * (x - 1);
  cd guess = h00 * b.t + h10 * h * b.t_u + h01 * a.t + h11 * h * a.t_u;
  return newton(u, guess);
}

cd TArc::velocity_at(double u, cd t) const { return eq_->velocity(u, t); }

cd TArc::velocity(double u) const { return velocity_at(u, point(u)); }

double TArc::u_near_zero(double eps) const {
  const ArcSample& b = samples_.back();
  double m = zero_order();
  double u = zero_.location.infinite ? b.u + m * std::log(eps * std::abs(b.t))
                                     : b.u + m * std::log(eps / std::abs(b.t - zero_.approx));
  return std::min(u, b.u);
}

double TArc::u_near_pole(double eps) const {
  const ArcSample& b = samples_.front();
  double m = pole_order();
  double u = pole_.location.infinite ? b.u + m * std::log(1.0 / (eps * std::abs(b.t)))
                                     : b.u + m * std::log(std::abs(b.t - pole_.approx) / eps);
  return std::max(u, b.u);
}

std::vector<TArc> track_T(const RationalFunction& f, double theta, const TrackOptions& opt) {
  if (f.is_constant()) throw Error(ErrorCode::ConstantFunction, "cannot track T_f for constant f");
  auto eq = std::make_shared<detail::ArcEquation>();
  eq->N = f.num().to_complex();
  eq->D = f.den().to_complex();
  eq->dN = detail::ArcEquation::deriv(eq->N);
  eq->dD = detail::ArcEquation::deriv(eq->D);
  eq->e = std::polar(1.0, theta);
  const int degN = f.num().degree(), degD = f.den().degree();
  const cd lcN = eq->N.back(), lcD = eq->D.back();

  if (degN == degD) {
    cd w = lcN / lcD * std::conj(eq->e);
    if (w.real() < 0.0 && std::abs(w.imag()) <= 1e-9 * std::abs(w))
      throw Error(ErrorCode::TrackingFailure, "f(inf) lies on the cut ray; rotate the cut");
  }

  DivisorList div = rf_zeros_poles(f);
  std::vector<DivisorEntry> zeros = div.zeros(), poles = div.poles();

  // Seed every branch near the zeros.
  double u0 = std::log(opt.s_min);
  std::vector<cd> t;
  std::vector<int> owner;
  for (int attempt = 0;; ++attempt) {
    t.clear();
    owner.clear();
    cd se = std::exp(u0) * eq->e;
    bool ok = true;
    for (size_t zi = 0; zi < zeros.size(); ++zi) {
      const DivisorEntry& z = zeros[zi];
      int m = z.multiplicity;
      cd w, base;
      if (z.location.infinite) {
        w = -lcN / (lcD * se);
        base = 0.0;
      } else {
        std::vector<cd> tc = taylor(eq->N, z.approx);
        w = -se * detail::ArcEquation::horner(eq->D, z.approx) / tc[static_cast<size_t>(m)];
        base = z.approx;
      }
      cd r = std::pow(w, 1.0 / m);
      for (int k = 0; k < m; ++k) {
        cd guess = base + r * std::polar(1.0, 2.0 * kPi * k / m);
        cd tt = guess;
        if (!newton_solve(*eq, u0, tt) || std::abs(tt - guess) > 0.3 * std::abs(r)) ok = false;
        t.push_back(tt);
        owner.push_back(static_cast<int>(zi));
      }
    }
    for (size_t i = 0; ok && i < t.size(); ++i)
      for (size_t j = i + 1; j < t.size(); ++j)
        if (std::abs(t[i] - t[j]) <= 1e-9 * (1.0 + std::abs(t[i]))) ok = false;
    if (ok) break;
    if (attempt >= 4) throw Error(ErrorCode::TrackingFailure, "could not separate the branches near the zeros of f");
    u0 -= 4.0;
  }

  const size_t nb = t.size();
  std::vector<std::vector<ArcSample>> paths(nb);
  for (size_t i = 0; i < nb; ++i) paths[i].push_back({u0, t[i], eq->velocity(u0, t[i])});

  const double u_end = std::log(opt.s_max);
  double u = u0;
  double h = 0.05;
  std::vector<cd> tp(nb), tc(nb);
  while (u < u_end) {
    double hh = std::min(h, u_end - u);
    bool accept = true;
    double worst = 0.0;
    for (size_t i = 0; i < nb && accept; ++i) {
      cd k1 = eq->velocity(u, t[i]);
      cd k2 = eq->velocity(u + hh / 2, t[i] + hh / 2 * k1);
      cd k3 = eq->velocity(u + hh / 2, t[i] + hh / 2 * k2);
      cd k4 = eq->velocity(u + hh, t[i] + hh * k3);
      tp[i] = t[i] + hh / 6 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      tc[i] = tp[i];
      if (!std::isfinite(std::abs(tp[i])) || !newton_solve(*eq, u + hh, tc[i])) {
        accept = false;
        break;
      }
      double allowed = 1e-6 * std::abs(tp[i] - t[i]) + 1e-13 * (1.0 + std::abs(tc[i]));
      double err = std::abs(tc[i] - tp[i]);
      worst = std::max(worst, err / allowed);
      if (err > allowed) accept = false;
    }
    // No branch may move a sizeable fraction of the distance to its nearest neighbour.
    for (size_t i = 0; i < nb && accept; ++i)
      for (size_t j = 0; j < nb && accept; ++j)
        if (i != j) {
          double sep = std::abs(t[i] - t[j]);
          if (std::abs(tc[i] - t[i]) > 0.25 * sep || std::abs(tc[i] - tc[j]) < 0.25 * sep) accept = false;
        }
    if (!accept) {
      h /= 2;
      if (h < 1e-10)
        throw Error(ErrorCode::TrackingFailure,
                    "continuation step underflow at |f| = " + std::to_string(std::exp(u)) + " (branch collision?)");
      continue;
    }
    u += hh;
    t = tc;
    for (size_t i = 0; i < nb; ++i) paths[i].push_back({u, t[i], eq->velocity(u, t[i])});
    if (worst < 0.1) h = std::min(opt.h_max, h * 1.5);
  }

  // Match the far ends to poles by the expected distance at |f| = s_max.
  std::vector<double> expected(poles.size());
  for (size_t pi = 0; pi < poles.size(); ++pi) {
    const DivisorEntry& p = poles[pi];
    double m = -p.multiplicity;
    if (p.location.infinite) {
      expected[pi] = std::pow(std::exp(u) * std::abs(lcD / lcN), 1.0 / m);
    } else {
      std::vector<cd> tc2 = taylor(eq->D, p.approx);
      cd dm = tc2[static_cast<size_t>(m)];
      expected[pi] = std::pow(std::exp(-u) * std::abs(detail::ArcEquation::horner(eq->N, p.approx) / dm), 1.0 / m);
    }
  }
  std::vector<int> pole_of(nb, -1);
  std::vector<int> count(poles.size(), 0);
  for (size_t i = 0; i < nb; ++i) {
    double best = INFINITY;
    for (size_t pi = 0; pi < poles.size(); ++pi) {
      double dist = poles[pi].location.infinite ? std::abs(t[i]) : std::abs(t[i] - poles[pi].approx);
      double score = std::abs(std::log(dist / expected[pi]));
      if (score < best) {
        best = score;
        pole_of[i] = static_cast<int>(pi);
      }
    }
    if (best > 2.0) throw Error(ErrorCode::TrackingFailure, "arc end does not approach a pole of f");
    ++count[static_cast<size_t>(pole_of[i])];
  }
  for (size_t pi = 0; pi < poles.size(); ++pi)
    if (count[pi] != -poles[pi].multiplicity)
      throw Error(ErrorCode::TrackingFailure, "arc ends do not reproduce the pole divisor of f");

  std::vector<TArc> arcs(nb);
  for (size_t i = 0; i < nb; ++i) {
    TArc& a = arcs[i];
    a.eq_ = eq;
    a.theta_ = theta;
    a.zero_ = zeros[static_cast<size_t>(owner[i])];
    a.pole_ = poles[static_cast<size_t>(pole_of[i])];
    a.samples_.assign(paths[i].rbegin(), paths[i].rend());
    double res = 0.0;
    for (const auto& s : a.samples_) {
      // Distance from t to T_f: deviation of arg f from the cut over |f'/f|.
      cd w = eq->f(s.t) * std::conj(eq->e);
      double angle = (std::abs(w.imag()) + std::max(0.0, w.real())) / std::abs(w);
      cd dlog = detail::ArcEquation::horner(eq->dN, s.t) / detail::ArcEquation::horner(eq->N, s.t) -
                detail::ArcEquation::horner(eq->dD, s.t) / detail::ArcEquation::horner(eq->D, s.t);
      res = std::max(res, angle / (std::abs(dlog) * (1.0 + std::abs(s.t))));
    }
    a.residual_ = res;
    if (res > std::max(opt.tol, 1e-9))
      throw Error(ErrorCode::TrackingFailure, "arc residual " + std::to_string(res) + " exceeds tolerance");
  }
  return arcs;
}

namespace {

using Scalar = std::function<cd(double)>;      // parameter -> g value rotated by the cut
using Location2 = std::function<cd(double)>;   // parameter -> t

struct Scanner {
  Location2 where;
  Scalar value;                                 // rotated value G
  std::function<double(double, cd)> slope;      // d Im G / d param at (param, t)
  std::function<double(double, cd)> scale;      // magnitude of the derivative for the tangency test
  std::vector<CutCrossing>* out;
  int arc;

  void interval(double a, cd ga, double b, cd gb, int depth) {
    if (std::abs(std::arg(gb / ga)) > 0.3 && depth < 40) {
      double m = 0.5 * (a + b);
      cd gm = value(m);
      interval(a, ga, m, gm, depth + 1);
      interval(m, gm, b, gb, depth + 1);
      return;
    }
    if (sgn(ga.imag()) == sgn(gb.imag())) return;
    if (ga.real() >= 0.0 && gb.real() >= 0.0) return;
    auto h = [&](double x) { return value(x).imag(); };
    double lo = std::min(a, b), hi = std::max(a, b);
    double flo = lo == a ? ga.imag() : gb.imag();
    double fhi = lo == a ? gb.imag() : ga.imag();
    double root;
    if (flo == 0.0) {
      root = lo;
    } else if (fhi == 0.0) {
      root = hi;
    } else {
      std::uintmax_t iters = 200;
      auto r = boost::math::tools::toms748_solve(h, lo, hi, flo, fhi, boost::math::tools::eps_tolerance<double>(52),
                                                 iters);
      root = 0.5 * (r.first + r.second);
    }
    cd t = where(root);
    cd G = root == lo ? (lo == a ? ga : gb) : root == hi ? (hi == a ? ga : gb) : value(root);
    if (G.real() >= 0.0) return;
    double sl = slope(root, t);
    if (std::abs(sl) <= 1e-8 * scale(root, t))
      throw Error(ErrorCode::TangentialCrossing, "tangential crossing of a cut at t = " + std::to_string(t.real()) +
                                                     (t.imag() < 0 ? "" : "+") + std::to_string(t.imag()) + "i");
    // Pole to zero on an arc is decreasing u, so both cases use -sgn(slope). A root on a sample point
    // may sit on a polyline vertex, where only the bracket gives the direction.
    int sign = (root == lo || root == hi) ? -sgn(fhi - flo) : -sgn(sl);
    out->push_back({arc, root, t, sign, G});
  }
};

}  // namespace

std::vector<CutCrossing> arc_crossings(const std::vector<TArc>& arcs, const RationalFunction& g, double theta_g,
                                       double tol) {
  std::vector<CutCrossing> out;
  const cd rot = std::polar(1.0, -theta_g);
  if (auto c = g.constant_value()) {
    cd w = c->to_complex() * rot;
    if (w.real() < 0.0 && std::abs(w.imag()) <= tol * std::abs(w) && !arcs.empty())
      throw Error(ErrorCode::TangentialCrossing, "constant function lies on its cut along every arc");
    return out;
  }
  for (size_t ai = 0; ai < arcs.size(); ++ai) {
    const TArc& arc = arcs[ai];
    const auto& smp = arc.samples();
    int run = 0;
    for (const auto& s : smp) {
      cd G = g.eval(s.t) * rot;
      bool on_cut = G.real() < 0.0 && std::abs(G.imag()) <= std::max(tol, 1e-9) * std::abs(G);
      run = on_cut ? run + 1 : 0;
      if (run >= 3) throw Error(ErrorCode::TangentialCrossing, "arc lies along the cut of the second function");
    }
    for (const DivisorEntry* end : {&arc.zero(), &arc.pole()}) {
      if (end->location.infinite) continue;
      cd G = g.eval(end->approx) * rot;
      if (std::isfinite(std::abs(G)) && G.real() < 0.0 && std::abs(G.imag()) <= 1e-9 * std::abs(G))
        throw Error(ErrorCode::TangentialCrossing, "second function is on its cut at an endpoint of T_f");
    }
    Scanner sc;
    sc.where = [&arc](double u) { return arc.point(u); };
    sc.value = [&arc, &g, rot](double u) { return g.eval(arc.point(u)) * rot; };
    sc.slope = [&arc, &g, rot](double u, cd t) { return (g.derivative_at(t) * arc.velocity_at(u, t) * rot).imag(); };
    sc.scale = [&arc, &g](double u, cd t) { return std::abs(g.derivative_at(t)) * std::abs(arc.velocity_at(u, t)); };
    sc.out = &out;
    sc.arc = static_cast<int>(ai);
    for (size_t k = 0; k + 1 < smp.size(); ++k) {
      // Scan with increasing parameter so the bracketing is uniform.
      const ArcSample& lo = smp[k + 1];
      const ArcSample& hi = smp[k];
      sc.interval(lo.u, g.eval(lo.t) * rot, hi.u, g.eval(hi.t) * rot, 0);
    }
  }
  return out;
}

double singularity_margin(const Loop& loop) { return 1e-6 * (1.0 + loop.diameter()); }

void check_loop_margin(const Loop& loop, const RationalFunction& f) {
  if (f.is_constant()) return;
  double margin = singularity_margin(loop);
  for (const auto& e : rf_zeros_poles(f).entries) {
    if (e.location.infinite) continue;
    if (loop.distance_to(e.approx) < margin)
      throw Error(ErrorCode::TooCloseToSingularity,
                  "loop passes within " + std::to_string(margin) + " of a zero or pole at " + e.location.to_string());
  }
}

std::vector<CutCrossing> loop_cut_crossings(const Loop& loop, const RationalFunction& f, double theta, double tol) {
  check_loop_margin(loop, f);
  std::vector<CutCrossing> out;
  const cd rot = std::polar(1.0, -theta);
  if (auto c = f.constant_value()) {
    cd w = c->to_complex() * rot;
    if (w.real() < 0.0 && std::abs(w.imag()) <= tol * std::abs(w))
      throw Error(ErrorCode::TangentialCrossing, "constant function lies on its cut along the loop");
    return out;
  }
  Scanner sc;
  sc.where = [&loop](double tau) { return loop.point(tau); };
  sc.value = [&loop, &f, rot](double tau) { return f.eval(loop.point(tau)) * rot; };
  sc.slope = [&loop, &f, rot](double tau, cd t) { return (f.derivative_at(t) * loop.tangent(tau) * rot).imag(); };
  sc.scale = [&loop, &f](double tau, cd t) { return std::abs(f.derivative_at(t)) * std::abs(loop.tangent(tau)); };
  sc.out = &out;
  sc.arc = -1;
  // One periodic scan: piece ends are shared samples and tau = 1 reuses the value at tau = 0.
  const auto pieces = loop.pieces();
  const double tau0 = pieces.front().first;
  const cd g0 = sc.value(tau0);
  double prev = tau0;
  cd gprev = g0;
  for (size_t p = 0; p < pieces.size(); ++p) {
    auto [a, b] = pieces[p];
    const int n = 64;
    for (int k = 1; k <= n; ++k) {
      bool last = k == n && p + 1 == pieces.size();
      double x = k == n ? b : a + (b - a) * k / n;
      cd gx = last ? g0 : sc.value(x);
      sc.interval(prev, gprev, x, gx, 0);
      prev = x;
      gprev = gx;
    }
  }
  return out;
}

double winding_integral(const Loop& loop, const RationalFunction& f) {
  check_loop_margin(loop, f);
  if (f.is_constant()) return 0.0;
  cd total = 0.0;
  for (auto [a, b] : loop.pieces()) {
    auto integrand = [&](double tau) { return f.dlog_at(loop.point(tau)) * loop.tangent(tau); };
    // Gauss-Kronrod nodes never touch the piece ends, where a polyline tangent jumps.
    double err = 0.0;
    total += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(integrand, a, b, 12, 1e-10, &err);
  }
  return (total / kTwoPiI).real();
}

int winding_number(const Loop& loop, const RationalFunction& f) {
  double w = winding_integral(loop, f);
  double r = std::round(w);
  if (std::abs(w - r) > 1e-6)
    throw Error(ErrorCode::TooCloseToSingularity, "winding integral " + std::to_string(w) + " is not an integer");
  return static_cast<int>(r);
}

std::string arcs_to_json(const std::vector<TArc>& arcs) {
  nlohmann::json j = nlohmann::json::array();
  for (const auto& a : arcs) {
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& s : a.samples()) pts.push_back({s.t.real(), s.t.imag()});
    j.push_back({{"pole", a.pole().location.to_string()},
                 {"pole_order", a.pole_order()},
                 {"zero", a.zero().location.to_string()},
                 {"zero_order", a.zero_order()},
                 {"theta", a.theta()},
                 {"residual", a.residual()},
                 {"points", pts}});
  }
  return j.dump();
}

}  // namespace cubereg
