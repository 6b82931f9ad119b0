#include "cubereg/numeric.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>

namespace cubereg {

void CompensatedSum::Part::add(double x) {
  double t = sum + x;
  if (std::abs(sum) >= std::abs(x)) {
    comp += (sum - t) + x;
  } else {
    comp += (x - t) + sum;
  }
  sum = t;
}

QuadResult integrate_tanh_sinh(const ComplexIntegrand& f, double a, double b, double tol) {
  thread_local boost::math::quadrature::tanh_sinh<double> rule(15);
  if (a == b) return {};
  double err = 0.0, l1 = 0.0;
  std::complex<double> v = rule.integrate([&f](double x) { return f(x); }, a, b, tol, &err, &l1);
  return {v, err};
}

QuadResult integrate_gauss_kronrod(const ComplexIntegrand& f, double a, double b, double tol, unsigned max_depth) {
  if (a == b) return {};
  double err = 0.0, l1 = 0.0;
  std::complex<double> v =
      boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, max_depth, tol, &err, &l1);
  return {v, err};
}

}  // namespace cubereg
