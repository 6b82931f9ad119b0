#include "cubereg/loop.hpp"

#include "cubereg/error.hpp"
#include "cubereg/special.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace cubereg {

Loop Loop::circle(std::complex<double> center, double radius, bool counterclockwise) {
  if (!(radius > 0.0) || !std::isfinite(radius)) throw Error(ErrorCode::ParseError, "loop radius must be positive");
  Loop l;
  l.kind_ = Kind::Circle;
  l.center_ = center;
  l.radius_ = radius;
  l.ccw_ = counterclockwise;
  return l;
}

Loop Loop::polyline(std::vector<std::complex<double>> vertices) {
  if (vertices.size() < 3) throw Error(ErrorCode::ParseError, "polyline loop needs at least 3 vertices");
  Loop l;
  l.kind_ = Kind::Polyline;
  l.vertices_ = std::move(vertices);
  double area = 0.0;
  for (size_t k = 0; k < l.vertices_.size(); ++k) {
    auto a = l.vertices_[k], b = l.vertices_[(k + 1) % l.vertices_.size()];
    area += a.real() * b.imag() - b.real() * a.imag();
  }
  l.ccw_ = area > 0.0;
  return l;
}

std::complex<double> Loop::point(double tau) const {
  if (kind_ == Kind::Circle) {
    double a = 2.0 * kPi * (ccw_ ? tau : -tau);
    return center_ + radius_ * std::complex<double>(std::cos(a), std::sin(a));
  }
  double n = static_cast<double>(vertices_.size());
  double x = std::clamp(tau, 0.0, 1.0) * n;
  size_t k = std::min(static_cast<size_t>(x), vertices_.size() - 1);
  double f = x - static_cast<double>(k);
  auto a = vertices_[k], b = vertices_[(k + 1) % vertices_.size()];
  return a + f * (b - a);
}

std::complex<double> Loop::tangent(double tau) const {
  if (kind_ == Kind::Circle) {
    double sgn = ccw_ ? 1.0 : -1.0;
    double a = 2.0 * kPi * sgn * tau;
    return std::complex<double>(0.0, 2.0 * kPi * sgn) * radius_ * std::complex<double>(std::cos(a), std::sin(a));
  }
  double n = static_cast<double>(vertices_.size());
  size_t k = std::min(static_cast<size_t>(std::clamp(tau, 0.0, 1.0) * n), vertices_.size() - 1);
  return n * (vertices_[(k + 1) % vertices_.size()] - vertices_[k]);
}

std::vector<std::pair<double, double>> Loop::pieces() const {
  if (kind_ == Kind::Circle) return {{0.0, 1.0}};
  std::vector<std::pair<double, double>> out;
  double n = static_cast<double>(vertices_.size());
  for (size_t k = 0; k < vertices_.size(); ++k)
    out.emplace_back(static_cast<double>(k) / n, static_cast<double>(k + 1) / n);
  return out;
}

double Loop::distance_to(std::complex<double> p) const {
  if (kind_ == Kind::Circle) return std::abs(std::abs(p - center_) - radius_);
  double best = INFINITY;
  for (size_t k = 0; k < vertices_.size(); ++k) {
    auto a = vertices_[k], b = vertices_[(k + 1) % vertices_.size()];
    double len2 = std::norm(b - a);
    double s = len2 > 0 ? std::clamp(((p - a) * std::conj(b - a)).real() / len2, 0.0, 1.0) : 0.0;
    best = std::min(best, std::abs(p - (a + s * (b - a))));
  }
  return best;
}

double Loop::diameter() const {
  if (kind_ == Kind::Circle) return 2.0 * radius_;
  double d = 0.0;
  for (auto a : vertices_)
    for (auto b : vertices_) d = std::max(d, std::abs(a - b));
  return d;
}

std::string Loop::to_string() const {
  std::ostringstream os;
  os.precision(17);
  if (kind_ == Kind::Circle) {
    os << "circle(center=" << center_.real() << (center_.imag() < 0 ? "" : "+") << center_.imag()
       << "i, r=" << radius_ << (ccw_ ? ")" : ", cw)");
  } else {
    os << "polyline(";
    for (size_t k = 0; k < vertices_.size(); ++k)
      os << (k ? "; " : "") << vertices_[k].real() << (vertices_[k].imag() < 0 ? "" : "+") << vertices_[k].imag() << "i";
    os << ")";
  }
  return os.str();
}

namespace {

std::string strip(const std::string& s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

double parse_real(const std::string& s, const std::string& whole) {
  if (s.empty() || s == "+") return 1.0;
  if (s == "-") return -1.0;
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || !std::isfinite(v)) throw Error(ErrorCode::ParseError, "bad number in '" + whole + "'");
  return v;
}

}  // namespace

std::complex<double> parse_complex(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw Error(ErrorCode::ParseError, "empty complex number");
  if (s.back() != 'i' && s.back() != 'j') return {parse_real(s, text), 0.0};
  s.pop_back();
  // Split at the last sign that is not part of an exponent.
  size_t split = std::string::npos;
  for (size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == std::string::npos) return {0.0, parse_real(s, text)};
  return {parse_real(s.substr(0, split), text), parse_real(s.substr(split), text)};
}

Loop parse_loop(const std::string& text) {
  std::string s = strip(text);
  if (s.rfind("poly=", 0) == 0) {
    std::vector<std::complex<double>> v;
    std::stringstream ss(s.substr(5));
    std::string item;
    while (std::getline(ss, item, ';')) v.push_back(parse_complex(item));
    return Loop::polyline(std::move(v));
  }
  std::complex<double> c{0.0, 0.0};
  double r = 1.0;
  bool ccw = true, have_r = false;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = strip(item);
    if (item == "cw") {
      ccw = false;
    } else if (item == "ccw") {
      ccw = true;
    } else if (item.rfind("c=", 0) == 0) {
      c = parse_complex(item.substr(2));
    } else if (item.rfind("r=", 0) == 0) {
      r = parse_real(item.substr(2), text);
      have_r = true;
    } else {
      throw Error(ErrorCode::ParseError, "unknown loop field '" + item + "' (expected c=, r=, cw)");
    }
  }
  if (!have_r) throw Error(ErrorCode::ParseError, "loop needs r=RADIUS");
  return Loop::circle(c, r, ccw);
}

}  // namespace cubereg
