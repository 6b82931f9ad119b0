#pragma once

#include "cubereg/cycle.hpp"
#include "cubereg/loop.hpp"
#include "cubereg/rational_function.hpp"

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace cubereg {

// Value in C / Z(p), Z(p) = (2 pi i)^p Z. `value` is an unreduced representative.
struct RegulatorValue {
  std::complex<double> value;
  int lattice = 1;
  double error = 0.0;
  std::vector<std::string> diagnostics;
};

// Generator (2 pi i)^p of the lattice.
std::complex<double> lattice_generator(int p);
// Odd p: imaginary part into (-L/2, L/2]; even p: real part into [0, L); L = (2 pi)^p.
RegulatorValue reduce_mod_lattice(const RegulatorValue& v);
// Other representative when the reduced value sits within `seam` of the cell edge.
std::optional<std::complex<double>> alternate_representative(const RegulatorValue& v, double seam = 1e-6);
// Distance between a and b in C / Z(p).
double distance_mod_lattice(std::complex<double> a, std::complex<double> b, int p);

// Sum of coeff * log z over the points of a 0-cycle in the 1-box, mod Z(1).
RegulatorValue aj_point_p1(const Cycle& z);

struct AjOptions {
  std::vector<double> cuts{0.0, 0.0, 0.0};
  double tol = 1e-10;
  // Orientation of the points of T_{z1} n T_{z2}, relative to the crossing sign of the tracker.
  int iterated_orientation = 1;
};

struct ComponentBreakdown {
  std::string label;
  Rational coeff;
  std::complex<double> arc_integral;  // integral of log z2 dlog z3 over T_{z1}
  std::complex<double> crossing_sum;  // sum of sign * log z3 over T_{z1} n T_{z2}
  std::complex<double> current_integral;  // 2 pi i arc_integral + (2 pi i)^2 crossing_sum
  int crossings = 0;
  double error = 0.0;
};

struct AjResult {
  RegulatorValue value;
  std::vector<ComponentBreakdown> components;
};

// AJ of a closed 1-cycle in the 3-box over a point, via the current R^3.
AjResult aj_point_p2(const Cycle& z, const AjOptions& opt = {});
// Integral over T_{z1} of log z2 dlog z3, oriented pole to zero, for one curve.
ComponentBreakdown aj_component(const ParamCurve& c, const AjOptions& opt = {});
// The (2,0) part of R^3 vanishes on a curve: dlog z2 ^ dlog z3 has coefficient a b - b a = 0 exactly.
bool holomorphic_part_vanishes(const ParamCurve& c);

struct LoopOptions {
  double theta_f = 0.0;
  double theta_g = 0.0;
  double tol = 1e-10;
};

struct PairingBreakdown {
  std::complex<double> integral;  // integral of log f dlog g along the loop, f on its cut branch
  std::complex<double> crossing_term;  // -2 pi i sum sign * log g at loop crossings with T_f
  int crossings = 0;
  int signed_crossings = 0;
  double error = 0.0;
};

// Pairing of the graph current of {f, g} with a loop.
PairingBreakdown graph_loop_integral(const RationalFunction& f, const RationalFunction& g, const Loop& loop,
                                     const LoopOptions& opt = {});

// Closed cycle over P^1 with n = 2 against a loop. Vertical and point components contribute 0.
RegulatorValue loop_pairing_n2(const Cycle& z, const Loop& loop, const LoopOptions& opt = {});

struct RealRegulatorResult {
  double one_form = 0.0;      // log|f| darg g - log|g| darg f
  double continuation = 0.0;  // Im(int log f dlog g) - log|g(p)| Im(int dlog f), log f continued from p
  double cut_crossing = 0.0;  // Im of the cut-branch pairing with its crossing terms
  double error = 0.0;
};

RealRegulatorResult real_regulator_loop(const RationalFunction& f, const RationalFunction& g, const Loop& loop,
                                        double tol = 1e-10);

// Integral of R(f1, f2) over the loop, reduced mod Z(2) only.
RegulatorValue milnor_pair(const std::vector<RationalFunction>& symbol, const Loop& loop, const LoopOptions& opt = {});

struct RigidityRow {
  std::string parameter;
  RegulatorValue value;
  std::vector<double> cuts;
};

struct RigidityReport {
  std::vector<RigidityRow> rows;
  double max_deviation = 0.0;
};

// Evaluates aj_point_p2 on each member, rotating cuts when a member is not in real position.
RigidityReport rigidity_scan(const std::function<Cycle(const GaussRational&)>& family,
                             const std::vector<GaussRational>& values, const AjOptions& opt = {});

// Smooth bump phi(t) = amplitude * exp(-1 / (1 - |t - c|^2 / rho^2)) on the disc |t - c| < rho.
struct BumpForm {
  std::complex<double> center{0.3, 0.2};
  double radius = 0.6;
  double amplitude = 1.0;

  double value(std::complex<double> t) const;
  // d phi / dt.
  std::complex<double> dt(std::complex<double> t) const;
};

struct StokesReport {
  std::complex<double> lhs;       // integral of (f'/f) phi dt ^ dtbar
  std::complex<double> arc_term;  // 2 pi i times the integral of phi dtbar over T_f
  std::complex<double> d_term;    // -integral of log f d(phi dtbar)
  double residual = 0.0;
  double error = 0.0;
};

// Both sides of the Stokes identity for eta = phi dtbar on C.
StokesReport stokes_cut_check(const RationalFunction& f, const BumpForm& eta = {}, double tol = 1e-9);

}  // namespace cubereg
