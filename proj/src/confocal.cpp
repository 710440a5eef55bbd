#include "qpc/confocal.hpp"

#include "qpc/errors.hpp"

#include <boost/math/tools/roots.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>

namespace qpc {

char slot_name(int slot) { return "uvw"[slot]; }

ChartLayout chart_layout(const QuadricSpec& spec) {
  const int n = spec.dim();
  std::array<std::pair<double, int>, kMaxDim> poles{};
  for (int i = 0; i < n; ++i) poles[i] = {-spec.signed_square(i), i};
  std::sort(poles.begin(), poles.begin() + n);

  std::array<Interval, kMaxDim> found{};
  int cnt = 0;
  for (int i = 0; i + 1 < n; ++i) {
    if (poles[i].first < 0.0 && poles[i + 1].first > 0.0) continue;  // contains lambda = 0
    found[cnt++] = Interval{poles[i].first, poles[i + 1].first, poles[i].second, poles[i + 1].second};
  }
  if (poles[n - 1].first > 0.0) {
    found[cnt++] = Interval{poles[n - 1].first, std::numeric_limits<double>::infinity(),
                            poles[n - 1].second, -1};
  }
  if (cnt != n - 1) throw InternalError("confocal layout: wrong slot count");
  ChartLayout lay;
  lay.slots = cnt;
  for (int k = 0; k < cnt; ++k) lay.iv[k] = found[cnt - 1 - k];
  return lay;
}

double chart_epsilon(const QuadricSpec& spec) { return 1e-8 * spec.scale() * spec.scale(); }

double confocal_residual(const QuadricSpec& spec, const Vec& p, double lambda) {
  double f = -1.0;
  for (int i = 0; i < spec.dim(); ++i) f += p[i] * p[i] / (spec.signed_square(i) + lambda);
  return f;
}

Vec confocal_gradient(const QuadricSpec& spec, const Vec& p, double lambda) {
  Vec g(spec.dim());
  for (int i = 0; i < spec.dim(); ++i) g[i] = 2.0 * p[i] / (spec.signed_square(i) + lambda);
  return g;
}

double xi(const QuadricSpec& spec, double x) {
  double r = 1.0;
  for (int i = 0; i < spec.dim(); ++i) r *= spec.signed_square(i) + x;
  return r;
}

Vec point_from_roots(const QuadricSpec& spec, const SlotVec& lambda, const Orthant& orthant) {
  const int n = spec.dim();
  Vec p(n);
  for (int i = 0; i < n; ++i) {
    const double ei = spec.signed_square(i);
    double num = ei, den = 1.0;
    for (int k = 0; k < lambda.size(); ++k) num *= ei + lambda[k];
    for (int j = 0; j < n; ++j)
      if (j != i) den *= ei - spec.signed_square(j);
    const double x2 = num / den;
    if (x2 < 0.0) {
      if (x2 < -1e-12 * spec.scale() * spec.scale())
        throw InternalError("negative radicand for coordinate " + std::to_string(i));
      p[i] = 0.0;
    } else {
      p[i] = orthant[i] * std::sqrt(x2);
    }
  }
  return p;
}

namespace {

void check_ranges(const QuadricSpec& spec, const ChartLayout& lay, const SlotVec& v, double eps) {
  if (v.size() != lay.slots)
    throw RangeError(-1, "expected " + std::to_string(lay.slots) + " chart coordinates");
  for (int k = 0; k < lay.slots; ++k) {
    const Interval& iv = lay.iv[k];
    if (!(v[k] > iv.lo + eps && v[k] < iv.hi - eps) || !std::isfinite(v[k])) {
      std::ostringstream os;
      os << "chart coordinate " << slot_name(k) << "=" << v[k] << " outside (" << iv.lo << ", " << iv.hi
         << ")";
      throw RangeError(k, os.str());
    }
  }
  (void)spec;
}

}  // namespace

SurfacePoint point_from_chart(const QuadricSpec& spec, const ChartCoords& c) {
  const ChartLayout lay = chart_layout(spec);
  check_ranges(spec, lay, c.values, 0.0);
  return make_surface_point(spec, point_from_roots(spec, c.values, c.orthant));
}

ChartCoords chart_from_point(const QuadricSpec& spec, const Vec& p) {
  const int n = spec.dim();
  if (p.size() != n) throw SpecError("point has wrong dimension");
  const double floor = 1e-7 * spec.scale();
  ChartCoords out;
  for (int i = 0; i < n; ++i) {
    if (!(std::abs(p[i]) > floor))
      throw ChartDegenerateError("point lies on the coordinate hyperplane x" + std::to_string(i + 1) + "=0");
    out.orthant[i] = p[i] > 0 ? 1 : -1;
  }
  for (int i = n; i < kMaxDim; ++i) out.orthant[i] = 1;

  std::array<double, kMaxDim> w{};
  for (int i = 0; i < n; ++i) w[i] = p[i] * p[i] / spec.signed_square(i);
  // Cleared secular polynomial sum_i w_i prod_{j!=i} (e_j + lambda); its roots are the slots.
  auto cubic = [&](double lam) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
      double t = w[i];
      for (int j = 0; j < n; ++j)
        if (j != i) t *= spec.signed_square(j) + lam;
      s += t;
    }
    return s;
  };
  // Secular form r(lambda) = sum w_i / (e_i + lambda) and its derivative.
  auto secular = [&](double lam, double& dr) {
    double r = 0.0;
    dr = 0.0;
    for (int i = 0; i < n; ++i) {
      const double den = spec.signed_square(i) + lam;
      r += w[i] / den;
      dr -= w[i] / (den * den);
    }
    return r;
  };
  auto pole_value = [&](int m) {
    double t = w[m];
    const double em = spec.signed_square(m);
    for (int j = 0; j < n; ++j)
      if (j != m) t *= spec.signed_square(j) - em;
    return t;
  };

  const ChartLayout lay = chart_layout(spec);
  out.values.resize(lay.slots);
  for (int k = 0; k < lay.slots; ++k) {
    const Interval& iv = lay.iv[k];
    double lo = iv.lo, hi;
    const double flo = pole_value(iv.lo_coord);
    double fhi;
    if (iv.bounded()) {
      hi = iv.hi;
      fhi = pole_value(iv.hi_coord);
    } else {
      const double span = std::max(spec.scale() * spec.scale(), std::abs(iv.lo));
      hi = iv.lo + span;
      fhi = cubic(hi);
      int guard = 0;
      while ((fhi > 0) == (flo > 0)) {
        hi = iv.lo + 2.0 * (hi - iv.lo);
        fhi = cubic(hi);
        if (++guard > 200) throw NumericalError("chart_from_point: no sign change in unbounded slot");
      }
    }
    if ((flo > 0) == (fhi > 0) || flo == 0.0 || fhi == 0.0) {
      std::ostringstream os;
      os << "chart_from_point: slot " << slot_name(k) << " not bracketed, C(lo)=" << flo << " C(hi)=" << fhi;
      throw NumericalError(os.str());
    }
    std::uintmax_t iters = 200;
    auto tol = boost::math::tools::eps_tolerance<double>(50);
    auto br = boost::math::tools::toms748_solve(cubic, lo, hi, flo, fhi, tol, iters);
    double root = 0.5 * (br.first + br.second);
    double blo = br.first, bhi = br.second;
    // Newton polish on the secular form, kept inside the bracket.
    for (int it = 0; it < 8; ++it) {
      double dr;
      const double r = secular(root, dr);
      if (dr == 0.0 || !std::isfinite(r)) break;
      const double next = root - r / dr;
      if (!(next > lo && next < hi)) break;
      const double step = std::abs(next - root);
      root = next;
      if (step <= 1e-12 * std::max(std::abs(root), 1e-300)) break;
    }
    if (!(root > iv.lo && root < iv.hi)) {
      std::ostringstream os;
      os << "chart_from_point: root " << root << " escaped its bracket (" << blo << ", " << bhi << ")";
      throw NumericalError(os.str());
    }
    out.values[k] = root;
  }
  return out;
}

Vec chart_tangent(const QuadricSpec& spec, const ChartCoords& c, int slot) {
  const Vec p = point_from_roots(spec, c.values, c.orthant);
  Vec t(spec.dim());
  for (int i = 0; i < spec.dim(); ++i) t[i] = p[i] / (2.0 * (spec.signed_square(i) + c.values[slot]));
  return t;
}

namespace {

double sqrt_abs_prod_e(const QuadricSpec& spec) {
  double r = 1.0;
  for (int i = 0; i < spec.dim(); ++i) r *= spec.square(i);
  return std::sqrt(r);
}

double sqrt_abs_prod(const SlotVec& v) {
  double r = 1.0;
  for (int k = 0; k < v.size(); ++k) r *= v[k];
  return std::sqrt(std::abs(r));
}

}  // namespace

ClosedFormCurvatures closed_form_curvatures(const QuadricSpec& spec, const ChartCoords& c) {
  const ChartLayout lay = chart_layout(spec);
  check_ranges(spec, lay, c.values, chart_epsilon(spec));
  const int m = lay.slots;
  const double num = spec.orientation() * sqrt_abs_prod_e(spec) / sqrt_abs_prod(c.values);
  ClosedFormCurvatures out;
  out.by_slot.resize(m);
  for (int k = 0; k < m; ++k) out.by_slot[k] = num / c.values[k];
  std::array<int, kMaxSlots> idx{0, 1, 2};
  std::sort(idx.begin(), idx.begin() + m, [&](int a, int b) { return out.by_slot[a] < out.by_slot[b]; });
  out.sorted.resize(m);
  for (int j = 0; j < m; ++j) {
    out.sorted[j] = out.by_slot[idx[j]];
    out.slot_of[j] = idx[j];
    out.sorted_of[idx[j]] = j;
  }
  return out;
}

FundamentalForms fundamental_forms(const QuadricSpec& spec, const ChartCoords& c) {
  const ClosedFormCurvatures k = closed_form_curvatures(spec, c);
  const int m = static_cast<int>(c.values.size());
  FundamentalForms ff;
  ff.g = Mat::Zero(m, m);
  ff.b = Mat::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    const double li = c.values[i];
    double prod = li;
    for (int j = 0; j < m; ++j)
      if (j != i) prod *= li - c.values[j];
    ff.g(i, i) = prod / (4.0 * xi(spec, li));
    ff.b(i, i) = k.by_slot[i] * ff.g(i, i);
  }
  return ff;
}

double slot_from_angle(const QuadricSpec& spec, const Interval& iv, double theta) {
  if (iv.bounded()) {
    const double s = std::sin(theta);
    return iv.lo + iv.width() * s * s;
  }
  const double s = std::sinh(theta);
  return iv.lo + spec.scale() * spec.scale() * s * s;
}

double angle_from_slot(const QuadricSpec& spec, const Interval& iv, double lambda) {
  if (iv.bounded()) return std::asin(std::sqrt(std::clamp((lambda - iv.lo) / iv.width(), 0.0, 1.0)));
  return std::asinh(std::sqrt(std::max(0.0, lambda - iv.lo)) / spec.scale());
}

ConfocalSlice::ConfocalSlice(const QuadricSpec& spec, int fixed_slot, double lambda)
    : spec_(spec), layout_(chart_layout(spec)), fixed_(fixed_slot), lambda_(lambda) {
  if (!is_r4(spec.family())) throw SpecError("confocal slices are defined for R4 families");
  if (fixed_slot < 0 || fixed_slot >= layout_.slots) throw RangeError(fixed_slot, "bad slot index");
  const Interval& iv = layout_.iv[fixed_slot];
  if (!iv.contains(lambda)) {
    std::ostringstream os;
    os << "slice parameter " << lambda << " outside " << slot_name(fixed_slot) << " interval (" << iv.lo << ", "
       << iv.hi << ")";
    throw RangeError(fixed_slot, os.str());
  }
  for (int k = 0, j = 0; k < layout_.slots; ++k)
    if (k != fixed_slot) free_[j++] = k;
}

bool ConfocalSlice::compact() const {
  return layout_.iv[free_[0]].bounded() && layout_.iv[free_[1]].bounded();
}

ChartCoords ConfocalSlice::coords(double f0, double f1, const Orthant& orthant) const {
  ChartCoords c;
  c.values.resize(layout_.slots);
  c.values[fixed_] = lambda_;
  c.values[free_[0]] = f0;
  c.values[free_[1]] = f1;
  c.orthant = orthant;
  return c;
}

SurfacePoint ConfocalSlice::point(double f0, double f1, const Orthant& orthant) const {
  return point_from_chart(spec_, coords(f0, f1, orthant));
}

}  // namespace qpc
