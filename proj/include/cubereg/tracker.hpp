#pragma once

#include "cubereg/loop.hpp"
#include "cubereg/rational_function.hpp"

#include <complex>
#include <memory>
#include <string>
#include <vector>

namespace cubereg {

struct TrackOptions {
  double s_min = 1e-8;
  double s_max = 1e8;
  double h_max = 0.1;
  double tol = 1e-10;
};

struct ArcSample {
  double u;  // log |f(t)|
  std::complex<double> t;
  std::complex<double> t_u;  // dt/du
};

namespace detail {
struct ArcEquation;
}

// One branch of T_f = f^{-1}(e^{i theta} R^-), oriented from a pole to a zero.
// Along the arc f(t) = -e^{u} e^{i theta}.
class TArc {
 public:
  // Divisor entries of the endpoints; multiplicity is the full order of f there.
  const DivisorEntry& pole() const { return pole_; }
  const DivisorEntry& zero() const { return zero_; }
  int pole_order() const { return -pole_.multiplicity; }
  int zero_order() const { return zero_.multiplicity; }
  double theta() const { return theta_; }
  const std::vector<ArcSample>& samples() const { return samples_; }  // u decreasing
  double u_pole_end() const { return samples_.front().u; }
  double u_zero_end() const { return samples_.back().u; }
  double residual() const { return residual_; }

  // Valid for every real u; outside the sampled range the local endpoint expansion seeds Newton.
  std::complex<double> point(double u) const;
  std::complex<double> velocity(double u) const;
  std::complex<double> velocity_at(double u, std::complex<double> t) const;
  // u at which |t - endpoint| = eps (|t| = 1/eps for an endpoint at infinity).
  double u_near_zero(double eps) const;
  double u_near_pole(double eps) const;

 private:
  friend std::vector<TArc> track_T(const RationalFunction&, double, const TrackOptions&);
  std::shared_ptr<const detail::ArcEquation> eq_;
  DivisorEntry pole_, zero_;
  double theta_ = 0.0;
  std::vector<ArcSample> samples_;
  double residual_ = 0.0;

  std::complex<double> newton(double u, std::complex<double> t) const;
  std::complex<double> tail_guess(double u) const;
};

// Throws ConstantFunction, TrackingFailure.
std::vector<TArc> track_T(const RationalFunction& f, double theta = 0.0, const TrackOptions& opt = {});

struct CutCrossing {
  int arc = -1;    // index into the arc list, or -1 for loop crossings
  double param;    // u on an arc, tau on a loop
  std::complex<double> t;
  int sign;
  std::complex<double> g_value;
};

// Points of the arcs where g lies on e^{i theta_g} R^-. Sign is that of d Im(g e^{-i theta_g}) along the
// pole-to-zero direction. Throws TangentialCrossing.
std::vector<CutCrossing> arc_crossings(const std::vector<TArc>& arcs, const RationalFunction& g, double theta_g,
                                       double tol = 1e-10);

// Crossings of the loop with T_f. Sign +1 when f(gamma) passes the cut counterclockwise about 0, so the
// signed count is the winding number. Throws TooCloseToSingularity, TangentialCrossing.
std::vector<CutCrossing> loop_cut_crossings(const Loop& loop, const RationalFunction& f, double theta,
                                            double tol = 1e-10);

// Minimal distance the loop must keep from the zeros and poles of f.
double singularity_margin(const Loop& loop);
void check_loop_margin(const Loop& loop, const RationalFunction& f);

// (1 / 2 pi i) of the loop integral of f'/f, by adaptive Gauss-Kronrod.
double winding_integral(const Loop& loop, const RationalFunction& f);
int winding_number(const Loop& loop, const RationalFunction& f);

// Arcs as JSON polylines.
std::string arcs_to_json(const std::vector<TArc>& arcs);

}  // namespace cubereg
