#include "qpc/conformal.hpp"

#include "qpc/errors.hpp"
#include "qpc/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qpc {

SlotDensity::SlotDensity(const QuadricSpec& spec, const Interval& iv, std::vector<double> fixed)
    : n_(spec.dim()), iv_(iv), fixed_(std::move(fixed)) {
  if (!iv.bounded()) throw SpecError("conformal parameters need a bounded slot interval");
  for (int i = 0; i < n_; ++i) e_[i] = spec.signed_square(i);
}

double SlotDensity::operator()(double x, double dist_lo, double dist_hi) const {
  double num = x;
  for (double f : fixed_) num *= x - f;
  double den = 4.0;
  for (int i = 0; i < n_; ++i) {
    if (i == iv_.lo_coord)
      den *= dist_lo;
    else if (i == iv_.hi_coord)
      den *= -dist_hi;
    else
      den *= e_[i] + x;
  }
  return std::sqrt(std::abs(num / den));
}

TransferMap::TransferMap(SlotDensity density, bool anchor_lo, int panels)
    : rho_(std::move(density)), anchor_lo_(anchor_lo), panels_(panels) {
  const Interval& iv = rho_.interval();
  table_.assign(panels_ + 1, 0.0);
  for (int j = 0; j < panels_; ++j) {
    const double a = node(j), b = node(j + 1);
    const double off_lo = a - iv.lo, off_hi = iv.hi - b;
    auto f = [&](double x, double dl, double dh) { return rho_(x, off_lo + dl, off_hi + dh); };
    table_[j + 1] = table_[j] + integrate_sqrt_singular(f, a, b, 1e-14).value;
  }
}

double TransferMap::node(int j) const {
  const Interval& iv = rho_.interval();
  if (j <= 0) return iv.lo;
  if (j >= panels_) return iv.hi;
  const double s = std::sin(0.5 * std::numbers::pi * j / panels_);
  return iv.lo + iv.width() * s * s;
}

double TransferMap::from_lo(double x) const {
  const Interval& iv = rho_.interval();
  if (x <= iv.lo) return 0.0;
  if (x >= iv.hi) return total();
  const double th = std::asin(std::sqrt((x - iv.lo) / iv.width()));
  int j = std::clamp(static_cast<int>(th / (0.5 * std::numbers::pi) * panels_), 0, panels_ - 1);
  while (j > 0 && node(j) > x) --j;
  while (j + 1 < panels_ && node(j + 1) <= x) ++j;
  const double a = node(j);
  if (x == a) return table_[j];
  const double off_lo = a - iv.lo, off_hi = iv.hi - x;
  auto f = [&](double y, double dl, double dh) { return rho_(y, off_lo + dl, off_hi + dh); };
  return table_[j] + integrate_sqrt_singular(f, a, x, 1e-14).value;
}

double TransferMap::s_of(double x) const { return anchor_lo_ ? from_lo(x) : total() - from_lo(x); }

double TransferMap::x_from_lo(double s) const {
  const Interval& iv = rho_.interval();
  if (s <= 0.0) return iv.lo;
  if (s >= total()) return iv.hi;
  const int j = static_cast<int>(std::upper_bound(table_.begin(), table_.end(), s) - table_.begin()) - 1;
  const int jj = std::clamp(j, 0, panels_ - 1);
  // Solve in the angle variable, where s is smooth up to the ends.
  const double w = iv.width();
  double ta = 0.5 * std::numbers::pi * jj / panels_, tb = 0.5 * std::numbers::pi * (jj + 1) / panels_;
  auto x_at = [&](double th) {
    const double sn = std::sin(th);
    return iv.lo + w * sn * sn;
  };
  double th = ta + (tb - ta) * (s - table_[jj]) / std::max(table_[jj + 1] - table_[jj], 1e-300);
  for (int it = 0; it < 100; ++it) {
    const double x = x_at(th);
    const double g = from_lo(x) - s;
    if (g > 0)
      tb = th;
    else
      ta = th;
    const double dg = rho_(x) * w * std::sin(2.0 * th);
    double next = (dg > 0 && std::isfinite(dg)) ? th - g / dg : 0.5 * (ta + tb);
    if (!(next > ta && next < tb)) next = 0.5 * (ta + tb);
    if (std::abs(next - th) <= 1e-15 * std::max(1.0, th) || tb - ta <= 1e-16) {
      th = next;
      break;
    }
    th = next;
  }
  return x_at(th);
}

double TransferMap::x_of(double s) const { return anchor_lo_ ? x_from_lo(s) : x_from_lo(total() - s); }

ConformalChart::ConformalChart(const QuadricSpec& spec, std::array<bool, 2> anchor_lo) : spec_(spec) {
  if (spec.family() != Family::q0) throw SpecError("conformal parameters: ellipsoid q0 required");
  const ChartLayout lay = chart_layout(spec);
  free_ = {0, 1};
  base_ = SlotVec::Zero(2);
  maps_.emplace_back(SlotDensity(spec, lay.iv[0], {}), anchor_lo[0]);
  maps_.emplace_back(SlotDensity(spec, lay.iv[1], {}), anchor_lo[1]);
}

ConformalChart::ConformalChart(const ConfocalSlice& slice, std::array<bool, 2> anchor_lo) : spec_(slice.spec()) {
  if (!slice.compact()) throw SpecError("conformal parameters: slice with bounded free slots required");
  free_ = slice.free_slots();
  base_ = SlotVec::Zero(3);
  base_[slice.fixed_slot()] = slice.lambda();
  for (int k = 0; k < 2; ++k)
    maps_.emplace_back(SlotDensity(spec_, slice.free_interval(k), {slice.lambda()}), anchor_lo[k]);
}

SlotVec ConformalChart::slots_from(double s0, double s1) const {
  SlotVec v = base_;
  v[free_[0]] = maps_[0].x_of(s0);
  v[free_[1]] = maps_[1].x_of(s1);
  return v;
}

Vec ConformalChart::point(double s0, double s1, const Orthant& orthant) const {
  return point_from_roots(spec_, slots_from(s0, s1), orthant);
}

}  // namespace qpc
