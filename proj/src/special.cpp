#include "cubereg/special.hpp"

#include "cubereg/error.hpp"
#include "cubereg/numeric.hpp"

#include <boost/math/special_functions/bernoulli.hpp>
#include <boost/math/special_functions/factorials.hpp>

#include <array>
#include <cmath>

namespace cubereg {

double cut_guard(std::complex<double> z) { return 1e-12 * (1.0 + std::abs(z)); }

std::complex<double> log_branch(std::complex<double> z, double theta) {
  if (z == 0.0) throw Error(ErrorCode::OnBranchCut, "log of zero");
  std::complex<double> w = z * std::polar(1.0, -theta);
  if (w.real() <= 0.0 && std::abs(w.imag()) <= cut_guard(z))
    throw Error(ErrorCode::OnBranchCut, "argument within the guard band of the cut at angle " + std::to_string(theta));
  return std::log(w) + std::complex<double>(0.0, theta);
}

std::complex<double> log_branch_side(std::complex<double> z, double theta, int side) {
  if (z == 0.0) throw Error(ErrorCode::OnBranchCut, "log of zero");
  std::complex<double> w = z * std::polar(1.0, -theta);
  if (w.real() <= 0.0 && std::abs(w.imag()) <= cut_guard(z))
    return {std::log(std::abs(w)), theta + (side >= 0 ? kPi : -kPi)};
  return std::log(w) + std::complex<double>(0.0, theta);
}

namespace {

// Coefficients B_{2k} / (2k+1)! of the series in u = -log(1 - z).
const std::array<double, 24>& bernoulli_coeffs() {
  static const std::array<double, 24> c = [] {
    std::array<double, 24> out{};
    for (int k = 1; k <= 24; ++k)
      out[static_cast<size_t>(k - 1)] =
          boost::math::bernoulli_b2n<double>(k) / boost::math::factorial<double>(static_cast<unsigned>(2 * k + 1));
    return out;
  }();
  return c;
}

// Valid for |z| <= 1 with Re z <= 1/2, where |u| < 1.8.
std::complex<double> dilog_series(std::complex<double> z) {
  std::complex<double> u = -std::log(1.0 - z);
  std::complex<double> u2 = u * u;
  CompensatedSum sum;
  sum.add(u);
  sum.add(-0.25 * u2);
  std::complex<double> power = u;
  for (double c : bernoulli_coeffs()) {
    power *= u2;
    std::complex<double> term = c * power;
    sum.add(term);
    if (std::abs(term) < 1e-18 * std::abs(u)) break;
  }
  return sum.value();
}

std::complex<double> dilog_disk(std::complex<double> z) {
  if (z.real() > 0.5) {
    if (z == 1.0) return kZeta2;
    return -dilog_series(1.0 - z) + kZeta2 - std::log(z) * std::log(1.0 - z);
  }
  return dilog_series(z);
}

}  // namespace

std::complex<double> dilog(std::complex<double> z) {
  if (z.real() > 1.0 && std::abs(z.imag()) <= cut_guard(z))
    throw Error(ErrorCode::OnBranchCut, "dilogarithm argument on the cut [1, inf)");
  if (std::abs(z) <= 1.0) return dilog_disk(z);
  std::complex<double> l = std::log(-z);
  return -dilog_disk(1.0 / z) - kZeta2 - 0.5 * l * l;
}

double bloch_wigner(std::complex<double> z) {
  double tiny = 1e-300;
  if (std::abs(z) < tiny || std::abs(z - 1.0) < 1e-15) throw Error(ErrorCode::SingularPoint, "D2 at 0 or 1");
  // D2(1/z) = -D2(z) keeps the dilogarithm off its cut.
  if (std::abs(z) > 1.0) return -bloch_wigner(1.0 / z);
  return dilog_disk(z).imag() + std::arg(1.0 - z) * std::log(std::abs(z));
}

}  // namespace cubereg
