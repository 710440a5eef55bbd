#pragma once

#include "qpc/quadric.hpp"

#include <array>
#include <cmath>
#include <limits>

namespace qpc {

// Open interval of one confocal slot. Its finite ends are poles -e_i; the
// coordinate attached to a pole vanishes there.
struct Interval {
  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();
  int lo_coord = -1;
  int hi_coord = -1;  // -1 when unbounded above

  bool bounded() const { return hi_coord >= 0; }
  double width() const { return hi - lo; }
  bool contains(double x) const { return x > lo && x < hi; }
};

struct ChartLayout {
  int slots = 0;
  std::array<Interval, kMaxSlots> iv{};  // slot 0 = u (largest values), descending
};

ChartLayout chart_layout(const QuadricSpec& spec);

// Letter of a slot: u, v, w.
char slot_name(int slot);

struct ChartCoords {
  SlotVec values;
  Orthant orthant{1, 1, 1, 1};
};

// sum x_i^2/(e_i + lambda) - 1: the confocal quadric through lambda.
double confocal_residual(const QuadricSpec& spec, const Vec& p, double lambda);
Vec confocal_gradient(const QuadricSpec& spec, const Vec& p, double lambda);

// prod_i (e_i + x)
double xi(const QuadricSpec& spec, double x);

// No range checks beyond radicand sign; shared by charts, slices and loci.
Vec point_from_roots(const QuadricSpec& spec, const SlotVec& lambda, const Orthant& orthant);

SurfacePoint point_from_chart(const QuadricSpec& spec, const ChartCoords& c);
ChartCoords chart_from_point(const QuadricSpec& spec, const Vec& p);

// d p / d lambda_slot.
Vec chart_tangent(const QuadricSpec& spec, const ChartCoords& c, int slot);

struct FundamentalForms {
  Mat g;
  Mat b;

  SlotVec g_diag() const { return g.diagonal(); }
  SlotVec b_diag() const { return b.diagonal(); }
};

FundamentalForms fundamental_forms(const QuadricSpec& spec, const ChartCoords& c);

struct ClosedFormCurvatures {
  SlotVec by_slot;                         // k attached to u, v, w
  SlotVec sorted;                          // ascending
  std::array<int, kMaxSlots> slot_of{};    // sorted index -> slot
  std::array<int, kMaxSlots> sorted_of{};  // slot -> sorted index
};

ClosedFormCurvatures closed_form_curvatures(const QuadricSpec& spec, const ChartCoords& c);

// Interior margin used by chart-interior operations.
double chart_epsilon(const QuadricSpec& spec);

// Fixed slot at lambda; the remaining slots are free.
class ConfocalSlice {
 public:
  ConfocalSlice(const QuadricSpec& spec, int fixed_slot, double lambda);

  const QuadricSpec& spec() const { return spec_; }
  int fixed_slot() const { return fixed_; }
  double lambda() const { return lambda_; }
  const std::array<int, 2>& free_slots() const { return free_; }
  const Interval& free_interval(int k) const { return layout_.iv[free_[k]]; }
  // Both free intervals bounded: the slice components are compact.
  bool compact() const;

  ChartCoords coords(double f0, double f1, const Orthant& orthant) const;
  SurfacePoint point(double f0, double f1, const Orthant& orthant) const;
  double slice_residual(const Vec& p) const { return confocal_residual(spec_, p, lambda_); }

 private:
  QuadricSpec spec_;
  ChartLayout layout_;
  int fixed_;
  double lambda_;
  std::array<int, 2> free_{};
};

// Angle form of a slot: bounded  lambda = lo + W sin^2(theta),
//                       unbounded lambda = lo + L sinh^2(theta), L = scale^2.
// The coordinates tied to the poles become signed analytic functions of theta,
// so curves can cross coordinate hyperplanes.
double slot_from_angle(const QuadricSpec& spec, const Interval& iv, double theta);
double angle_from_slot(const QuadricSpec& spec, const Interval& iv, double lambda);

template <class T>
void point_from_angles(const QuadricSpec& spec, const ChartLayout& lay, const T* theta,
                       const Orthant& base, T* out) {
  using std::sin;
  using std::cos;
  using std::sinh;
  using std::sqrt;
  const int n = spec.dim();
  const double ell = spec.scale() * spec.scale();
  T lam[kMaxSlots];
  T fac_lo[kMaxSlots], fac_hi[kMaxSlots];
  for (int k = 0; k < lay.slots; ++k) {
    const Interval& iv = lay.iv[k];
    if (iv.bounded()) {
      const double rw = std::sqrt(iv.width());
      const T s = sin(theta[k]), c = cos(theta[k]);
      fac_lo[k] = rw * s;
      fac_hi[k] = rw * c;
      lam[k] = iv.lo + iv.width() * s * s;
    } else {
      const T s = sinh(theta[k]);
      fac_lo[k] = std::sqrt(ell) * s;
      fac_hi[k] = T(0.0);
      lam[k] = iv.lo + ell * s * s;
    }
  }
  for (int i = 0; i < n; ++i) {
    const double ei = spec.signed_square(i);
    double den = 1.0;
    for (int j = 0; j < n; ++j)
      if (j != i) den *= ei - spec.signed_square(j);
    T x = T(base[i] * std::sqrt(std::abs(ei / den)));
    for (int k = 0; k < lay.slots; ++k) {
      const Interval& iv = lay.iv[k];
      if (iv.lo_coord == i) {
        x *= fac_lo[k];
      } else if (iv.hi_coord == i) {
        x *= fac_hi[k];
      } else {
        // e_i + lambda keeps one sign over the whole interval; take it at the midpoint.
        const double mid = iv.bounded() ? 0.5 * (iv.lo + iv.hi) : iv.lo + ell;
        const double sg = (ei + mid) > 0 ? 1.0 : -1.0;
        x *= sqrt(sg * (lam[k] + ei));
      }
    }
    out[i] = x;
  }
}

}  // namespace qpc
