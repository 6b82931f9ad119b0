#pragma once

#include <complex>

namespace cubereg {

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kZeta2 = kPi * kPi / 6.0;
inline const std::complex<double> kTwoPiI{0.0, 2.0 * kPi};

// Cut angle theta: the cut lies along e^{i theta} R^-.
struct CutAngle {
  double theta = 0.0;
};

// Guard band around cuts: 1e-12 (1 + |z|).
double cut_guard(std::complex<double> z);

// Log(z e^{-i theta}) + i theta; throws OnBranchCut inside the guard band.
std::complex<double> log_branch(std::complex<double> z, double theta = 0.0);
// Same branch, but inside the guard band returns the limit from the side
// where Im(z e^{-i theta}) has sign `side`.
std::complex<double> log_branch_side(std::complex<double> z, double theta, int side);

// Principal branch, cut [1, inf).
std::complex<double> dilog(std::complex<double> z);
// Im Li2(z) + arg(1 - z) log|z|.
double bloch_wigner(std::complex<double> z);

}  // namespace cubereg
