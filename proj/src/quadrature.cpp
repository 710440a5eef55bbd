#include "qpc/quadrature.hpp"

#include "qpc/errors.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <array>
#include <algorithm>
#include <cmath>

namespace qpc {

namespace {

constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights on the odd Kronrod nodes (indices 1, 3, 5, 7).
constexpr std::array<double, 4> kWg = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                       0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double k, g;
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  const double fc = f(c);
  double k = kWgk[7] * fc, g = kWg[3] * fc;
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const double s = f(c - dx) + f(c + dx);
    k += kWgk[j] * s;
    if (j % 2 == 1) g += kWg[j / 2] * s;
  }
  return {k * h, g * h};
}

void adapt(const std::function<double(double)>& f, double a, double b, double tol, int depth, QuadResult& acc) {
  const Panel p = gk15(f, a, b);
  acc.evals += 15;
  const double err = std::abs(p.k - p.g);
  if (err <= tol || depth <= 0 || std::abs(b - a) <= 1e-15 * (std::abs(a) + std::abs(b))) {
    acc.value += p.k;
    acc.error += err;
    return;
  }
  const double m = 0.5 * (a + b);
  adapt(f, a, m, 0.5 * tol, depth - 1, acc);
  adapt(f, m, b, 0.5 * tol, depth - 1, acc);
}

}  // namespace

QuadResult gauss_kronrod(const std::function<double(double)>& f, double a, double b, double abs_tol, int max_depth) {
  QuadResult r;
  if (a == b) return r;
  adapt(f, a, b, abs_tol, max_depth, r);
  return r;
}

QuadResult integrate_sqrt_singular(const EndpointIntegrand& f, double lo, double hi, double abs_tol) {
  if (!(hi > lo)) throw NumericalError("integrate_sqrt_singular: empty interval");
  const double half = 0.5 * (hi - lo);
  const double tmax = std::sqrt(half);
  // dx = 2t dt; the t factor cancels the inverse square root.
  auto left = [&](double t) {
    const double d = t * t;
    return 2.0 * t * f(lo + d, d, (hi - lo) - d);
  };
  auto right = [&](double t) {
    const double d = t * t;
    return 2.0 * t * f(hi - d, (hi - lo) - d, d);
  };
  QuadResult a = gauss_kronrod(left, 0.0, tmax, 0.5 * abs_tol);
  QuadResult b = gauss_kronrod(right, 0.0, tmax, 0.5 * abs_tol);
  return {a.value + b.value, a.error + b.error, a.evals + b.evals};
}

QuadResult integrate_tanh_sinh(const EndpointIntegrand& f, double lo, double hi, double abs_tol) {
  boost::math::quadrature::tanh_sinh<double> ts;
  const double w = hi - lo;
  int evals = 0;
  // Second argument: lo - x on the left half (<= 0), hi - x on the right half.
  auto g = [&](double x, double xc) {
    ++evals;
    double dlo, dhi;
    if (xc <= 0) {
      dlo = -xc;
      dhi = w - dlo;
    } else {
      dhi = xc;
      dlo = w - dhi;
    }
    return f(x, dlo, dhi);
  };
  double err = 0.0, l1 = 0.0;
  std::size_t levels = 0;
  const double rel = std::max(1e-14, abs_tol / std::max(1.0, w));
  const double v = ts.integrate(g, lo, hi, rel, &err, &l1, &levels);
  return {v, err, evals};
}

}  // namespace qpc
