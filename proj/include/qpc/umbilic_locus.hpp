#pragma once

#include "qpc/confocal.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qpc {

enum class Coincidence { P12, P23 };
std::string_view coincidence_name(Coincidence k);

// c0 * q_p^2 + c1 * q_q^2 = 1 in graph coordinates q_i = x_i / alpha_i.
struct ConicCoefficients {
  std::array<int, 2> coords{};  // ambient indices p, q
  std::array<double, 2> coef{};
  bool ellipse() const { return coef[0] > 0 && coef[1] > 0; }
};

struct PartiallyUmbilicCurve {
  Family family = Family::Q0;
  Coincidence kind = Coincidence::P12;  // measured, not assumed
  int component = 0;
  int hyperplane = -1;  // ambient coordinate that vanishes
  int lift = -1;        // lifted coordinate of the family's graph chart
  ConicCoefficients conic;
  std::array<int, 2> pair_slots{};  // coincident slots (k, k+1), sharing a pole
  int free_slot = -1;
  bool closed = true;
  Orthant base{1, 1, 1, 1};  // signs of the coordinates not driven by the free slot
  int sheet = 0;             // sign of x for the two-sheeted family, else 0
};

std::vector<PartiallyUmbilicCurve> partially_umbilic_locus(const QuadricSpec& spec);

// Explicit parametrization of one curve by the free slot's angle.
class LocusCurve {
 public:
  LocusCurve(const QuadricSpec& spec, const PartiallyUmbilicCurve& curve, double truncation_radius = -1.0);

  const PartiallyUmbilicCurve& curve() const { return curve_; }
  const QuadricSpec& spec() const { return spec_; }

  // Parameter window: [0, 2 pi) for closed curves, [-T, T] for arcs (|p| <= truncation radius).
  double param_lo() const { return lo_; }
  double param_hi() const { return hi_; }

  Vec point(double theta) const;
  // Derivatives of the three nonzero coordinates (hyperplane coordinate dropped).
  void jets(double theta, Eigen::Vector3d d[4]) const;

  double length() const { return table_.back(); }
  // Arclength from theta = 0 (signed for arcs).
  double s_of(double theta) const;
  double theta_of(double s) const;
  double s_min() const { return closed() ? 0.0 : -s_of(hi_); }
  double s_max() const { return closed() ? length() : s_of(hi_); }
  bool closed() const { return curve_.closed; }

  double torsion(double theta) const;
  double curvature(double theta) const;

  // Analytic coordinate-plane crossings of the curve inside the window, as arclength.
  std::vector<double> crossing_arclengths() const;

 private:
  double speed(double theta) const;
  double from_zero(double theta) const;

  QuadricSpec spec_;
  ChartLayout lay_;
  PartiallyUmbilicCurve curve_;
  double fixed_theta_[kMaxSlots] = {0, 0, 0};
  double lo_ = 0.0, hi_ = 0.0;
  int panels_ = 64;
  std::vector<double> table_;  // cumulative arclength from theta = 0 at theta_j = hi * j / panels
};

struct LocusSample {
  double s = 0.0;
  double theta = 0.0;
  SurfacePoint point;
  PrincipalData principal;
  double torsion = 0.0;
};

// n points equally spaced in arclength; closed curves start at theta = 0.
std::vector<LocusSample> sample_locus(const LocusCurve& c, int n);

struct TorsionSample {
  double s, torsion;
};
std::vector<TorsionSample> locus_torsion_profile(const LocusCurve& c, int n);
// Zeros by sign change on a fine scan and bisection; arclength positions.
std::vector<double> locus_torsion_zeros(const LocusCurve& c, int scan = 4096);

// The family's restriction to the locus hyperplane as an R3 quadric in the
// remaining coordinates.
QuadricSpec auxiliary_quadric(const QuadricSpec& spec, int hyperplane);
Vec drop_coordinate(const Vec& p, int m);

// Graph chart: x_i = alpha_i q_i for i != lift, x_lift = sign alpha_lift sqrt(Delta),
// Delta = eps_lift (1 - sum_{i != lift} eps_i q_i^2).
struct GraphChart {
  QuadricSpec spec;
  int lift = 3;
  int sign = 1;
};
GraphChart graph_chart(const QuadricSpec& spec, int sign = 1);
int graph_lift_coord(Family f);
double graph_delta(const GraphChart& gc, const Vec& q);
Vec graph_point(const GraphChart& gc, const Vec& q);
Vec graph_coords(const GraphChart& gc, const Vec& p);
// Full first and second fundamental forms of the graph chart (family orientation).
FundamentalForms graph_chart_forms(const GraphChart& gc, const Vec& q);
// The Q2 block exactly as displayed, with the unnormalized normal
// (-bcd u, -acd v, abd w, abc sqrt(Delta)).
FundamentalForms q2_displayed_graph_forms(const QuadricSpec& spec, const Vec& q);

}  // namespace qpc
