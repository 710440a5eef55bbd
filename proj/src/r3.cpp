#include "qpc/r3.hpp"

#include "qpc/errors.hpp"

#include <cmath>
#include <numbers>

namespace qpc {

SurfacePoint r3_point_from_chart(const QuadricSpec& spec, double u, double v, const Orthant& orthant) {
  if (is_r4(spec.family())) throw SpecError("r3_point_from_chart: R3 family required");
  ChartCoords c;
  c.values.resize(2);
  c.values << u, v;
  c.orthant = orthant;
  return point_from_chart(spec, c);
}

std::vector<Vec> r3_umbilics(const QuadricSpec& spec) {
  std::vector<Vec> out;
  const double a2 = spec.square(0), b2 = spec.square(1), c2 = spec.square(2);
  double x, z;
  switch (spec.family()) {
    case Family::q0:
      x = std::sqrt(a2 * (a2 - b2) / (a2 - c2));
      z = std::sqrt(c2 * (b2 - c2) / (a2 - c2));
      break;
    case Family::q2:
      x = std::sqrt(a2 * (a2 + b2) / (a2 + c2));
      z = std::sqrt(c2 * (b2 - c2) / (a2 + c2));
      break;
    case Family::q1:
      return out;
    default:
      throw SpecError("r3_umbilics: R3 family required");
  }
  for (int sx : {1, -1})
    for (int sz : {1, -1}) {
      Vec p(3);
      p << sx * x, 0.0, sz * z;
      out.push_back(p);
    }
  return out;
}

Vec ellipsoid_conformal_map(const QuadricSpec& spec, double U, double V) {
  if (spec.family() != Family::q0) throw SpecError("ellipsoid_conformal_map: q0 required");
  const double a2 = spec.square(0), b2 = spec.square(1), c2 = spec.square(2);
  const double A1 = (a2 - b2) / (a2 - c2), B1 = (b2 - c2) / (a2 - c2);
  const double cu = std::cos(U), su = std::sin(U), cv = std::cos(V), sv = std::sin(V);
  Vec p(3);
  p << spec.semiaxis(0) * cu * std::sqrt(A1 * cv * cv + sv * sv), spec.semiaxis(1) * su * sv,
      spec.semiaxis(2) * cv * std::sqrt(B1 * cu * cu + su * su);
  return p;
}

EllipsoidConformal::EllipsoidConformal(const QuadricSpec& spec)
    : spec_(spec), chart_(spec, {false, true}) {
  const double a2 = spec.square(0), b2 = spec.square(1), c2 = spec.square(2);
  rect_.A1 = (a2 - b2) / (a2 - c2);
  rect_.B1 = (b2 - c2) / (a2 - c2);
  rect_.s1 = chart_.map(0).total();
  rect_.s2 = chart_.map(1).total();
}

Vec EllipsoidConformal::point(double r1, double r2) const {
  Orthant o{r2 < 0 ? -1 : 1, 1, r1 < 0 ? -1 : 1, 1};
  return chart_.point(std::min(std::abs(r1), rect_.s1), std::min(std::abs(r2), rect_.s2), o);
}

std::pair<double, double> EllipsoidConformal::angles(double r1, double r2) const {
  const double h = 0.5 * std::numbers::pi;
  return {h * (1.0 - r2 / rect_.s2), h * (1.0 - r1 / rect_.s1)};
}

}  // namespace qpc
