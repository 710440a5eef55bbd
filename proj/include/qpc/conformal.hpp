#pragma once

#include "qpc/confocal.hpp"

#include <vector>

namespace qpc {

// Line element of one slot in a principal chart restricted to two free slots.
// With the other slots held at `fixed`, the metric is
//   |x_0 - x_1| (rho_0(x_0)^2 dx_0^2 + rho_1(x_1)^2 dx_1^2),
//   rho(x) = sqrt| x prod_f (x - lambda_f) / (4 prod_i (e_i + x)) |,
// so arclength-like parameters s = int rho dx make the chart conformal.
class SlotDensity {
 public:
  SlotDensity(const QuadricSpec& spec, const Interval& iv, std::vector<double> fixed);

  double operator()(double x, double dist_lo, double dist_hi) const;
  double operator()(double x) const { return (*this)(x, x - iv_.lo, iv_.hi - x); }
  const Interval& interval() const { return iv_; }

 private:
  std::array<double, kMaxDim> e_{};
  int n_ = 0;
  Interval iv_;
  std::vector<double> fixed_;
};

// Monotone map x <-> s(x) = int_anchor^x rho, anchor = lo or hi of the interval.
class TransferMap {
 public:
  TransferMap(SlotDensity density, bool anchor_lo, int panels = 32);

  double total() const { return table_.back(); }
  double s_of(double x) const;
  double x_of(double s) const;
  double density(double x) const { return rho_(x); }
  const SlotDensity& slot_density() const { return rho_; }

 private:
  double from_lo(double x) const;
  double x_from_lo(double s) const;
  double node(int j) const;

  SlotDensity rho_;
  bool anchor_lo_;
  int panels_;
  std::vector<double> table_;  // cumulative from lo at nodes x_j = lo + W sin^2(pi j / 2P)
};

// Conformal coordinates on a compact two-parameter principal surface: the
// ellipsoid q0 itself, or a confocal slice of an R4 family whose free slots
// are both bounded.
class ConformalChart {
 public:
  ConformalChart(const QuadricSpec& spec, std::array<bool, 2> anchor_lo);       // q0
  ConformalChart(const ConfocalSlice& slice, std::array<bool, 2> anchor_lo);     // compact slice

  const QuadricSpec& spec() const { return spec_; }
  const TransferMap& map(int k) const { return maps_[k]; }
  int free_slot(int k) const { return free_[k]; }

  // s_k in [0, total_k], measured from each slot's anchor.
  SlotVec slots_from(double s0, double s1) const;
  Vec point(double s0, double s1, const Orthant& orthant) const;

 private:
  QuadricSpec spec_;
  std::array<int, 2> free_{};
  SlotVec base_;
  std::vector<TransferMap> maps_;
};

}  // namespace qpc
