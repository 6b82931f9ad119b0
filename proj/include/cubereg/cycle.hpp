#pragma once

#include "cubereg/rational_function.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace cubereg {

enum class Ambient { Point, P1 };

// Rationally parametrized curve t -> (z_1(t), ..., z_n(t)) in the box.
struct ParamCurve {
  std::vector<RationalFunction> coords;
  std::string label;
};

// Point of the box; for ambient P1 it sits over a base point of X.
struct BoxPoint {
  std::vector<GaussRational> coords;
  std::optional<Location> base;
};

// {x} x C for a point x of X = P1 and a curve C in the box.
struct VerticalCurve {
  Location base;
  ParamCurve fiber;
};

using Component = std::variant<ParamCurve, BoxPoint, VerticalCurve>;

struct CycleTerm {
  Rational coeff;
  Component component;
};

class Cycle {
 public:
  Cycle() = default;
  Cycle(Ambient ambient, int n) : ambient_(ambient), n_(n) {}

  Ambient ambient() const { return ambient_; }
  int n() const { return n_; }
  const std::vector<CycleTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }

  void add(const Rational& coeff, Component component);
  // Merge equal components, drop zero coefficients, sort by canonical key.
  void normalize();

  Cycle operator-() const;
  friend Cycle operator+(const Cycle& a, const Cycle& b);
  friend Cycle operator-(const Cycle& a, const Cycle& b) { return a + (-b); }
  friend Cycle operator*(const Rational& s, const Cycle& c);
  // Exact equality of normal forms.
  friend bool operator==(const Cycle& a, const Cycle& b);

  std::string to_string() const;

 private:
  Ambient ambient_ = Ambient::Point;
  int n_ = 0;
  std::vector<CycleTerm> terms_;
};

std::string component_key(const Component& c);
std::string component_to_string(const Component& c);
int component_dimension(const Component& c);

struct AdmissibilityReport {
  bool ok = true;
  std::vector<std::string> violations;
  std::vector<std::string> notes;  // closure points off the box, informational
};

AdmissibilityReport check_admissible(const Cycle& z);
Cycle boundary(const Cycle& z);
bool is_degenerate(const ParamCurve& c);
Cycle alt(const Cycle& z);
// Multiplies z_k by tau_k. The admissibility of the result goes to `report` when given.
Cycle translate(const Cycle& z, const std::vector<GaussRational>& tau, AdmissibilityReport* report = nullptr);
// Coordinate permutation: coordinate k of the result is coordinate perm[k] of the input.
Cycle permute(const Cycle& z, const std::vector<int>& perm);

struct RealPositionReport {
  bool ok = true;
  std::vector<std::string> violations;
};

// Flags arcs where two coordinates are simultaneously on their cut rays, or points where three are.
RealPositionReport real_position_check(const Cycle& z, double tol = 1e-9, const std::vector<double>& cuts = {});

// Convenience constructors for the dilogarithm cycles.
ParamCurve curve_V(const GaussRational& a);  // (1 - a/t, 1 - t, t)
ParamCurve curve_W(const GaussRational& b);  // (1 - b/t, t, 1 - t)
Cycle cycle_xi(const GaussRational& a);      // V(a) - W(1 - a)

}  // namespace cubereg
