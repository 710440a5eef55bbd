#include "qpc/umbilic_locus.hpp"

#include "qpc/errors.hpp"
#include "qpc/jet.hpp"
#include "qpc/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qpc {

std::string_view coincidence_name(Coincidence k) { return k == Coincidence::P12 ? "P12" : "P23"; }

int graph_lift_coord(Family f) { return f == Family::Q3 ? 0 : 3; }

namespace {

constexpr double kPi = std::numbers::pi;

double denom(const QuadricSpec& s, int i) {
  double d = 1.0;
  for (int j = 0; j < s.dim(); ++j)
    if (j != i) d *= s.signed_square(i) - s.signed_square(j);
  return d;
}

}  // namespace

std::vector<PartiallyUmbilicCurve> partially_umbilic_locus(const QuadricSpec& spec) {
  if (!is_r4(spec.family())) throw SpecError("partially umbilic loci are defined for R4 families");
  const ChartLayout lay = chart_layout(spec);
  std::vector<PartiallyUmbilicCurve> out;
  for (int k = 0; k + 1 < lay.slots; ++k) {
    if (lay.iv[k].lo_coord != lay.iv[k + 1].hi_coord) continue;
    const int m = lay.iv[k].lo_coord;
    const double pole = lay.iv[k].lo;
    const int f = (k == 0) ? 2 : 0;
    const Interval& fi = lay.iv[f];

    PartiallyUmbilicCurve proto;
    proto.family = spec.family();
    proto.hyperplane = m;
    proto.lift = graph_lift_coord(spec.family());
    proto.pair_slots = {k, k + 1};
    proto.free_slot = f;
    proto.closed = fi.bounded();

    // Conic in graph coordinates: on the curve x_l^2 = K_l (e_l + lambda_free).
    std::array<int, 2> cc{};
    for (int i = 0, j = 0; i < spec.dim(); ++i)
      if (i != m && i != proto.lift) cc[j++] = i;
    auto kcoef = [&](int l) {
      const double el = spec.signed_square(l);
      return el * (el + pole) * (el + pole) / denom(spec, l);
    };
    const int p = cc[0], q = cc[1];
    const double ep = spec.signed_square(p), eq = spec.signed_square(q);
    proto.conic.coords = cc;
    proto.conic.coef = {spec.square(p) / (kcoef(p) * (ep - eq)), spec.square(q) / (kcoef(q) * (eq - ep))};

    std::vector<int> rest;
    for (int i = 0; i < spec.dim(); ++i)
      if (i != m && i != fi.lo_coord && i != fi.hi_coord) rest.push_back(i);
    const int combos = 1 << rest.size();
    for (int c = 0; c < combos; ++c) {
      PartiallyUmbilicCurve cur = proto;
      for (size_t r = 0; r < rest.size(); ++r) cur.base[rest[r]] = (c >> r) & 1 ? -1 : 1;
      if (spec.family() == Family::Q3) cur.sheet = cur.base[0];
      out.push_back(cur);
    }
  }
  if (spec.family() == Family::Q3) {
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.sheet > b.sheet; });
  }
  for (size_t i = 0; i < out.size(); ++i) {
    out[i].component = static_cast<int>(i);
    // Which pair coincides is read off the implicit oracle.
    LocusCurve lc(spec, out[i]);
    const double th = out[i].closed ? 0.7 : 0.3 * lc.param_hi();
    PrincipalData pd = principal_data(spec, lc.point(th));
    out[i].kind = pd.gaps[0] < pd.gaps[1] ? Coincidence::P12 : Coincidence::P23;
  }
  return out;
}

LocusCurve::LocusCurve(const QuadricSpec& spec, const PartiallyUmbilicCurve& curve, double truncation_radius)
    : spec_(spec), lay_(chart_layout(spec)), curve_(curve) {
  fixed_theta_[curve.pair_slots[0]] = 0.0;         // at the lower end of the upper slot
  fixed_theta_[curve.pair_slots[1]] = 0.5 * kPi;   // at the upper end of the lower slot
  if (curve.closed) {
    lo_ = 0.0;
    hi_ = 2.0 * kPi;
  } else {
    const double r = truncation_radius > 0 ? truncation_radius : 5.0 * spec.scale();
    double b = 0.5;
    int guard = 0;
    while (point(b).norm() < r) {
      b *= 2.0;
      if (++guard > 60) throw NumericalError("locus arc never reaches the truncation radius");
    }
    double a = 0.0;
    for (int it = 0; it < 200 && b - a > 1e-15; ++it) {
      const double mid = 0.5 * (a + b);
      (point(mid).norm() < r ? a : b) = mid;
    }
    hi_ = a;
    lo_ = -a;
  }
  table_.assign(panels_ + 1, 0.0);
  auto sp = [this](double t) { return speed(t); };
  const double h = (hi_ - lo_) / panels_;
  for (int j = 0; j < panels_; ++j)
    table_[j + 1] = table_[j] + gauss_kronrod(sp, lo_ + j * h, lo_ + (j + 1) * h, 1e-14).value;
}

Vec LocusCurve::point(double theta) const {
  double th[kMaxSlots] = {fixed_theta_[0], fixed_theta_[1], fixed_theta_[2]};
  th[curve_.free_slot] = theta;
  double x[kMaxDim];
  point_from_angles(spec_, lay_, th, curve_.base, x);
  Vec p(spec_.dim());
  for (int i = 0; i < spec_.dim(); ++i) p[i] = x[i];
  p[curve_.hyperplane] = 0.0;
  return p;
}

void LocusCurve::jets(double theta, Eigen::Vector3d d[4]) const {
  Jet3 th[kMaxSlots] = {Jet3(fixed_theta_[0]), Jet3(fixed_theta_[1]), Jet3(fixed_theta_[2])};
  th[curve_.free_slot] = Jet3::variable(theta);
  Jet3 x[kMaxDim];
  point_from_angles(spec_, lay_, th, curve_.base, x);
  for (int o = 0; o < 4; ++o) {
    for (int i = 0, j = 0; i < spec_.dim(); ++i) {
      if (i == curve_.hyperplane) continue;
      d[o][j++] = x[i].d[o];
    }
  }
}

double LocusCurve::speed(double theta) const {
  Eigen::Vector3d d[4];
  jets(theta, d);
  return d[1].norm();
}

double LocusCurve::from_zero(double theta) const {
  // cumulative from lo_
  const double h = (hi_ - lo_) / panels_;
  const double t = std::clamp(theta, lo_, hi_);
  const int j = std::clamp(static_cast<int>((t - lo_) / h), 0, panels_ - 1);
  auto sp = [this](double x) { return speed(x); };
  return table_[j] + gauss_kronrod(sp, lo_ + j * h, t, 1e-14).value;
}

double LocusCurve::s_of(double theta) const {
  if (curve_.closed) {
    const double t = std::fmod(std::fmod(theta, 2 * kPi) + 2 * kPi, 2 * kPi);
    return from_zero(t);
  }
  return from_zero(theta) - from_zero(0.0);
}

double LocusCurve::theta_of(double s) const {
  const double base = curve_.closed ? 0.0 : from_zero(0.0);
  double target = s + base;
  if (curve_.closed) target = std::fmod(std::fmod(target, length()) + length(), length());
  target = std::clamp(target, 0.0, length());
  const int j = std::clamp(
      static_cast<int>(std::upper_bound(table_.begin(), table_.end(), target) - table_.begin()) - 1, 0,
      panels_ - 1);
  const double h = (hi_ - lo_) / panels_;
  double a = lo_ + j * h, b = lo_ + (j + 1) * h;
  double th = a + h * (target - table_[j]) / std::max(table_[j + 1] - table_[j], 1e-300);
  for (int it = 0; it < 100; ++it) {
    const double g = from_zero(th) - target;
    (g > 0 ? b : a) = th;
    const double dg = speed(th);
    double next = dg > 0 ? th - g / dg : 0.5 * (a + b);
    if (!(next >= a && next <= b)) next = 0.5 * (a + b);
    const bool done = std::abs(next - th) <= 1e-15 * std::max(1.0, std::abs(th));
    th = next;
    if (done) break;
  }
  return th;
}

double LocusCurve::curvature(double theta) const {
  Eigen::Vector3d d[4];
  jets(theta, d);
  const double sp = d[1].norm();
  return d[1].cross(d[2]).norm() / (sp * sp * sp);
}

double LocusCurve::torsion(double theta) const {
  Eigen::Vector3d d[4];
  jets(theta, d);
  const Eigen::Vector3d c = d[1].cross(d[2]);
  const double sp = d[1].norm();
  if (c.norm() / (sp * sp * sp) < 1e-10)
    throw NumericalError("locus curve is not biregular at theta=" + std::to_string(theta));
  return c.dot(d[3]) / c.squaredNorm();
}

std::vector<double> LocusCurve::crossing_arclengths() const {
  std::vector<double> out;
  if (curve_.closed) {
    for (int k = 0; k < 4; ++k) out.push_back(s_of(0.5 * kPi * k));
  } else {
    out.push_back(0.0);
  }
  return out;
}

std::vector<LocusSample> sample_locus(const LocusCurve& c, int n) {
  if (n < 2) throw SpecError("sample_locus needs n >= 2");
  std::vector<LocusSample> out;
  out.reserve(n);
  for (int j = 0; j < n; ++j) {
    LocusSample ls;
    ls.s = c.closed() ? c.length() * j / n : c.s_min() + (c.s_max() - c.s_min()) * j / (n - 1);
    ls.theta = c.theta_of(ls.s);
    if (!c.closed() && j == 0) ls.theta = c.param_lo();
    if (!c.closed() && j == n - 1) ls.theta = c.param_hi();
    if (c.closed() && j == 0) ls.theta = 0.0;
    ls.point = make_surface_point(c.spec(), c.point(ls.theta));
    ls.principal = principal_data(c.spec(), ls.point.coords);
    ls.torsion = c.torsion(ls.theta);
    out.push_back(ls);
  }
  return out;
}

std::vector<TorsionSample> locus_torsion_profile(const LocusCurve& c, int n) {
  if (n < 32) throw SpecError("torsion profile needs n >= 32");
  std::vector<TorsionSample> out;
  for (const auto& s : sample_locus(c, n)) out.push_back({s.s, s.torsion});
  return out;
}

std::vector<double> locus_torsion_zeros(const LocusCurve& c, int scan) {
  const double lo = c.param_lo(), hi = c.param_hi();
  const double h = (hi - lo) / scan;
  std::vector<double> th(scan), tv(scan);
  for (int j = 0; j < scan; ++j) {
    th[j] = lo + (j + 0.5) * h;
    tv[j] = c.torsion(th[j]);
  }
  std::vector<double> zeros;
  const int pairs = c.closed() ? scan : scan - 1;
  for (int j = 0; j < pairs; ++j) {
    const int k = (j + 1) % scan;
    if ((tv[j] > 0) == (tv[k] > 0)) continue;
    double a = th[j], b = (k == 0) ? th[k] + (hi - lo) : th[k];
    double fa = tv[j];
    for (int it = 0; it < 200 && b - a > 1e-15 * std::max(1.0, std::abs(a)); ++it) {
      const double m = 0.5 * (a + b);
      const double fm = c.torsion(m);
      if ((fm > 0) == (fa > 0)) {
        a = m;
        fa = fm;
      } else {
        b = m;
      }
    }
    zeros.push_back(c.s_of(0.5 * (a + b)));
  }
  std::sort(zeros.begin(), zeros.end());
  return zeros;
}

QuadricSpec auxiliary_quadric(const QuadricSpec& spec, int hyperplane) {
  std::vector<double> sq;
  int neg = 0;
  for (int i = 0; i < spec.dim(); ++i) {
    if (i == hyperplane) continue;
    sq.push_back(spec.square(i));
    neg += spec.signature(i) < 0;
  }
  const Family f = neg == 0 ? Family::q0 : (neg == 1 ? Family::q1 : Family::q2);
  return QuadricSpec::from_squares(f, sq);
}

Vec drop_coordinate(const Vec& p, int m) {
  Vec q(p.size() - 1);
  for (int i = 0, j = 0; i < p.size(); ++i)
    if (i != m) q[j++] = p[i];
  return q;
}

GraphChart graph_chart(const QuadricSpec& spec, int sign) {
  if (!is_r4(spec.family())) throw SpecError("graph charts are defined for R4 families");
  return GraphChart{spec, graph_lift_coord(spec.family()), sign >= 0 ? 1 : -1};
}

namespace {

std::array<int, 3> free_coords(const GraphChart& gc) {
  std::array<int, 3> idx{};
  for (int i = 0, j = 0; i < 4; ++i)
    if (i != gc.lift) idx[j++] = i;
  return idx;
}

}  // namespace

double graph_delta(const GraphChart& gc, const Vec& q) {
  const auto idx = free_coords(gc);
  double s = 1.0;
  for (int j = 0; j < 3; ++j) s -= gc.spec.signature(idx[j]) * q[j] * q[j];
  return gc.spec.signature(gc.lift) * s;
}

Vec graph_point(const GraphChart& gc, const Vec& q) {
  const auto idx = free_coords(gc);
  const double delta = graph_delta(gc, q);
  if (delta < 0) throw RangeError(-1, "graph chart: negative lift radicand");
  Vec p(4);
  for (int j = 0; j < 3; ++j) p[idx[j]] = gc.spec.semiaxis(idx[j]) * q[j];
  p[gc.lift] = gc.sign * gc.spec.semiaxis(gc.lift) * std::sqrt(delta);
  return p;
}

Vec graph_coords(const GraphChart& gc, const Vec& p) {
  const auto idx = free_coords(gc);
  Vec q(3);
  for (int j = 0; j < 3; ++j) q[j] = p[idx[j]] / gc.spec.semiaxis(idx[j]);
  return q;
}

FundamentalForms graph_chart_forms(const GraphChart& gc, const Vec& q) {
  const auto idx = free_coords(gc);
  const double delta = graph_delta(gc, q);
  if (!(delta > 1e-12)) throw RangeError(-1, "graph chart: Delta too small");
  const QuadricSpec& s = gc.spec;
  const int eL = s.signature(gc.lift);
  const double aL = s.semiaxis(gc.lift);
  const Vec p = graph_point(gc, q);
  const double nL = unit_normal(s, p)[gc.lift];
  const double sd = std::sqrt(delta);
  FundamentalForms ff;
  ff.g = Mat::Zero(3, 3);
  ff.b = Mat::Zero(3, 3);
  for (int i = 0; i < 3; ++i) {
    const int ei = s.signature(idx[i]);
    for (int j = 0; j < 3; ++j) {
      const int ej = s.signature(idx[j]);
      const double dij = i == j ? 1.0 : 0.0;
      ff.g(i, j) = s.square(idx[i]) * dij + s.square(gc.lift) * ei * ej * q[i] * q[j] / delta;
      const double d2 = -(eL * ei * dij * delta + ei * ej * q[i] * q[j]) / (delta * sd);
      ff.b(i, j) = gc.sign * aL * d2 * nL;
    }
  }
  return ff;
}

FundamentalForms q2_displayed_graph_forms(const QuadricSpec& spec, const Vec& q) {
  if (spec.family() != Family::Q2) throw SpecError("displayed block belongs to Q2");
  const double a = spec.semiaxis(0), b = spec.semiaxis(1), c = spec.semiaxis(2), d = spec.semiaxis(3);
  const double u = q[0], v = q[1], w = q[2];
  const double D = u * u + v * v - w * w - 1;
  if (!(D > 1e-12)) throw RangeError(-1, "graph chart: Delta too small");
  const double d2 = d * d, abcd = a * b * c * d, D32 = D * std::sqrt(D);
  FundamentalForms ff;
  ff.g.resize(3, 3);
  ff.b.resize(3, 3);
  ff.g(0, 0) = a * a + d2 * u * u / D;
  ff.g(1, 1) = b * b + d2 * v * v / D;
  ff.g(2, 2) = c * c + d2 * w * w / D;
  ff.g(0, 1) = ff.g(1, 0) = d2 * u * v / D;
  ff.g(0, 2) = ff.g(2, 0) = -d2 * u * w / D;
  ff.g(1, 2) = ff.g(2, 1) = -d2 * v * w / D;
  ff.b(0, 0) = abcd * (v * v - w * w - 1) / D32;
  ff.b(0, 1) = ff.b(1, 0) = -abcd * u * v / D32;
  ff.b(0, 2) = ff.b(2, 0) = abcd * u * w / D32;
  ff.b(1, 1) = abcd * (u * u - w * w - 1) / D32;
  ff.b(1, 2) = ff.b(2, 1) = abcd * v * w / D32;
  ff.b(2, 2) = -abcd * (u * u + v * v - 1) / D32;
  return ff;
}

}  // namespace qpc
