#include "cubereg/cycle.hpp"
#include "cubereg/error.hpp"
#include "cubereg/tracker.hpp"

#include <cmath>
#include <sstream>

namespace cubereg {

namespace {

bool on_cut(std::complex<double> w, double theta, double tol) {
  w *= std::polar(1.0, -theta);
  return w.real() < 0.0 && std::abs(w.imag()) <= tol * std::abs(w);
}

void check_curve(const ParamCurve& c, const std::vector<double>& cuts, double tol, const std::string& where,
                 RealPositionReport& rep) {
  const size_t n = c.coords.size();
  auto cut = [&](size_t i) { return i < cuts.size() ? cuts[i] : 0.0; };
  auto name = [](size_t i) { return "z" + std::to_string(i + 1); };
  auto violate = [&](const std::string& msg) {
    rep.ok = false;
    rep.violations.push_back(where + ": " + msg);
  };

  std::vector<int> const_on_cut(n, 0);
  std::vector<std::vector<TArc>> arcs(n);
  for (size_t i = 0; i < n; ++i) {
    if (auto v = c.coords[i].constant_value()) {
      const_on_cut[i] = on_cut(v->to_complex(), cut(i), tol);
    } else {
      arcs[i] = track_T(c.coords[i], cut(i));
    }
  }

  // Pairs: an arc on which two coordinates both lie on their cuts.
  std::vector<std::vector<std::vector<CutCrossing>>> cross(n, std::vector<std::vector<CutCrossing>>(n));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      bool ci = c.coords[i].is_constant(), cj = c.coords[j].is_constant();
      if (ci && cj) {
        if (const_on_cut[i] && const_on_cut[j]) violate(name(i) + " and " + name(j) + " are both constant on their cuts");
      } else if (ci || cj) {
        size_t k = ci ? i : j;
        if (const_on_cut[k])
          violate(name(k) + " is constant on its cut, so the arcs of " + name(ci ? j : i) + " lie in a double locus");
      } else {
        try {
          cross[i][j] = arc_crossings(arcs[i], c.coords[j], cut(j), tol);
        } catch (const Error& e) {
          if (e.code() != ErrorCode::TangentialCrossing) throw;
          violate(name(i) + " and " + name(j) + " are simultaneously on their cuts along an arc");
        }
      }
    }
  }

  // Triples: an isolated double point where a third coordinate is also on its cut.
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      for (const auto& x : cross[i][j])
        for (size_t k = 0; k < n; ++k) {
          if (k == i || k == j) continue;
          if (on_cut(c.coords[k].eval(x.t), cut(k), 1e-7)) {
            std::ostringstream os;
            os << name(i) << ", " << name(j) << " and " << name(k) << " are all on their cuts at t = " << x.t.real()
               << (x.t.imag() < 0 ? "" : "+") << x.t.imag() << "i";
            violate(os.str());
          }
        }
}

}  // namespace

RealPositionReport real_position_check(const Cycle& z, double tol, const std::vector<double>& cuts) {
  RealPositionReport rep;
  for (size_t k = 0; k < z.terms().size(); ++k) {
    const Component& comp = z.terms()[k].component;
    std::string where = "component " + std::to_string(k + 1);
    if (const auto* pc = std::get_if<ParamCurve>(&comp)) {
      check_curve(*pc, cuts, tol, where, rep);
    } else if (const auto* vc = std::get_if<VerticalCurve>(&comp)) {
      check_curve(vc->fiber, cuts, tol, where, rep);
    }
  }
  return rep;
}

}  // namespace cubereg
