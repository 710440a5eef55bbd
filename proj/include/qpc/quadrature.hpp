#pragma once

#include <functional>

namespace qpc {

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  int evals = 0;
};

// Adaptive 7/15-point Gauss-Kronrod on [a, b].
QuadResult gauss_kronrod(const std::function<double(double)>& f, double a, double b, double abs_tol,
                         int max_depth = 40);

// Integrand with its distances to both ends, so that factors (x - lo) and
// (hi - x) can be formed without cancellation.
using EndpointIntegrand = std::function<double(double x, double dist_lo, double dist_hi)>;

// Integral over (lo, hi) of an integrand with (at worst) inverse-square-root
// singularities at the ends: split at the midpoint, substitute x = lo + t^2 on
// the left half and x = hi - t^2 on the right half, then Gauss-Kronrod.
QuadResult integrate_sqrt_singular(const EndpointIntegrand& f, double lo, double hi, double abs_tol = 1e-12);

// Same integral by double-exponential (tanh-sinh) quadrature on the raw integrand.
QuadResult integrate_tanh_sinh(const EndpointIntegrand& f, double lo, double hi, double abs_tol = 1e-12);

}  // namespace qpc
