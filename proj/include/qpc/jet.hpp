#pragma once

#include <cmath>

namespace qpc {

// Value plus first three derivatives with respect to one parameter.
struct Jet3 {
  double d[4] = {0, 0, 0, 0};

  Jet3() = default;
  Jet3(double v) : d{v, 0, 0, 0} {}  // NOLINT: implicit on purpose
  Jet3(double v, double d1, double d2, double d3) : d{v, d1, d2, d3} {}

  static Jet3 variable(double v) { return {v, 1, 0, 0}; }
  double value() const { return d[0]; }
};

inline Jet3 operator+(const Jet3& a, const Jet3& b) {
  return {a.d[0] + b.d[0], a.d[1] + b.d[1], a.d[2] + b.d[2], a.d[3] + b.d[3]};
}
inline Jet3 operator-(const Jet3& a, const Jet3& b) {
  return {a.d[0] - b.d[0], a.d[1] - b.d[1], a.d[2] - b.d[2], a.d[3] - b.d[3]};
}
inline Jet3 operator-(const Jet3& a) { return {-a.d[0], -a.d[1], -a.d[2], -a.d[3]}; }
inline Jet3 operator*(const Jet3& f, const Jet3& g) {
  return {f.d[0] * g.d[0], f.d[1] * g.d[0] + f.d[0] * g.d[1],
          f.d[2] * g.d[0] + 2 * f.d[1] * g.d[1] + f.d[0] * g.d[2],
          f.d[3] * g.d[0] + 3 * f.d[2] * g.d[1] + 3 * f.d[1] * g.d[2] + f.d[0] * g.d[3]};
}
inline Jet3& operator+=(Jet3& a, const Jet3& b) { return a = a + b; }
inline Jet3& operator*=(Jet3& a, const Jet3& b) { return a = a * b; }

// h(f) given h and its derivatives evaluated at f.value().
inline Jet3 compose(double h0, double h1, double h2, double h3, const Jet3& f) {
  const double f1 = f.d[1], f2 = f.d[2], f3 = f.d[3];
  return {h0, h1 * f1, h2 * f1 * f1 + h1 * f2, h3 * f1 * f1 * f1 + 3 * h2 * f1 * f2 + h1 * f3};
}

inline Jet3 sin(const Jet3& f) {
  const double s = std::sin(f.d[0]), c = std::cos(f.d[0]);
  return compose(s, c, -s, -c, f);
}
inline Jet3 cos(const Jet3& f) {
  const double s = std::sin(f.d[0]), c = std::cos(f.d[0]);
  return compose(c, -s, -c, s, f);
}
inline Jet3 sinh(const Jet3& f) {
  const double s = std::sinh(f.d[0]), c = std::cosh(f.d[0]);
  return compose(s, c, s, c, f);
}
inline Jet3 sqrt(const Jet3& f) {
  const double r = std::sqrt(f.d[0]);
  return compose(r, 0.5 / r, -0.25 / (r * f.d[0]), 0.375 / (r * f.d[0] * f.d[0]), f);
}

}  // namespace qpc
