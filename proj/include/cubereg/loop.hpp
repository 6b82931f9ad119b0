#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

namespace cubereg {

// Closed loop in the parameter plane, parametrized by tau in [0, 1].
class Loop {
 public:
  enum class Kind { Circle, Polyline };

  static Loop circle(std::complex<double> center, double radius, bool counterclockwise = true);
  // Vertices are joined in order and the last one back to the first.
  static Loop polyline(std::vector<std::complex<double>> vertices);

  Kind kind() const { return kind_; }
  std::complex<double> center() const { return center_; }
  double radius() const { return radius_; }
  const std::vector<std::complex<double>>& vertices() const { return vertices_; }
  bool counterclockwise() const { return ccw_; }

  std::complex<double> point(double tau) const;
  std::complex<double> tangent(double tau) const;  // d gamma / d tau
  std::complex<double> basepoint() const { return point(0.0); }
  // Parameter intervals on which the loop is smooth.
  std::vector<std::pair<double, double>> pieces() const;
  double distance_to(std::complex<double> p) const;
  double diameter() const;

  std::string to_string() const;

 private:
  Kind kind_ = Kind::Circle;
  std::complex<double> center_;
  double radius_ = 1.0;
  bool ccw_ = true;
  std::vector<std::complex<double>> vertices_;
};

// "1.5", "-2i", "0.3-0.25i", "i".
std::complex<double> parse_complex(const std::string& text);
// "c=X+Yi,r=R[,cw]" or "poly=Z1;Z2;Z3...".
Loop parse_loop(const std::string& text);

}  // namespace cubereg
