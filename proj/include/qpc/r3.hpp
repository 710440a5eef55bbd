#pragma once

#include "qpc/conformal.hpp"

#include <vector>

namespace qpc {

SurfacePoint r3_point_from_chart(const QuadricSpec& spec, double u, double v, const Orthant& orthant);

// Closed-form umbilic points: four for q0 and q2, none for q1.
std::vector<Vec> r3_umbilics(const QuadricSpec& spec);

struct ConformalRect {
  double s1 = 0.0, s2 = 0.0;  // half-widths of the parameter rectangle
  double A1 = 0.0, B1 = 0.0;
};

// Explicit trigonometric parametrization of q0:
//   (a cosU sqrt(A1 cos^2 V + sin^2 V), b sinU sinV, c cosV sqrt(B1 cos^2 U + sin^2 U)).
Vec ellipsoid_conformal_map(const QuadricSpec& spec, double U, double V);

// Conformal rectangle of the y >= 0 half of q0. r1 runs along the u slot
// (|r1| measured from u = -c^2, sign = sign z), r2 along the v slot
// (|r2| measured from v = -a^2, sign = sign x); the four corners are the umbilics.
class EllipsoidConformal {
 public:
  explicit EllipsoidConformal(const QuadricSpec& spec);

  const ConformalRect& rect() const { return rect_; }
  const ConformalChart& chart() const { return chart_; }

  Vec point(double r1, double r2) const;
  // Affine rescaling of the rectangle onto the angle domain of the explicit map.
  std::pair<double, double> angles(double r1, double r2) const;

 private:
  QuadricSpec spec_;
  ConformalChart chart_;
  ConformalRect rect_;
};

}  // namespace qpc
