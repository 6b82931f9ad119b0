#pragma once

#include <complex>
#include <functional>

namespace cubereg {

// Neumaier compensated accumulator.
class CompensatedSum {
 public:
  void add(double x);
  void add(std::complex<double> z) {
    re_.add(z.real());
    im_.add(z.imag());
  }
  std::complex<double> value() const { return {re_.result(), im_.result()}; }

 private:
  struct Part {
    double sum = 0.0;
    double comp = 0.0;
    void add(double x);
    double result() const { return sum + comp; }
  };
  Part re_, im_;
};

inline void CompensatedSum::add(double x) { re_.add(x); }

struct QuadResult {
  std::complex<double> value;
  double error = 0.0;
};

using ComplexIntegrand = std::function<std::complex<double>(double)>;

// Double-exponential rule; tolerates integrable endpoint singularities.
QuadResult integrate_tanh_sinh(const ComplexIntegrand& f, double a, double b, double tol);
// Adaptive Gauss-Kronrod (61 points).
QuadResult integrate_gauss_kronrod(const ComplexIntegrand& f, double a, double b, double tol, unsigned max_depth = 15);

}  // namespace cubereg
