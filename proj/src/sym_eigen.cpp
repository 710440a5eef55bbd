#include "qpc/sym_eigen.hpp"

#include "qpc/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qpc {

namespace {

void sort_ascending(SymEigen& r) {
  const int n = static_cast<int>(r.values.size());
  for (int i = 1; i < n; ++i) {
    for (int j = i; j > 0 && r.values[j] < r.values[j - 1]; --j) {
      std::swap(r.values[j], r.values[j - 1]);
      r.vectors.col(j).swap(r.vectors.col(j - 1));
    }
  }
}

// Rotation zeroing the off-diagonal of [[a, b], [b, c]].
struct Rot {
  double c, s, t;
};

Rot jacobi_rotation(double a, double b, double c) {
  if (b == 0.0) return {1.0, 0.0, 0.0};
  const double tau = (c - a) / (2.0 * b);
  const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  const double cs = 1.0 / std::sqrt(1.0 + t * t);
  return {cs, t * cs, t};
}

SymEigen eig2(double a, double b, double c) {
  const Rot r = jacobi_rotation(a, b, c);
  SymEigen out;
  out.values.resize(2);
  out.values << a - r.t * b, c + r.t * b;
  out.vectors.resize(2, 2);
  out.vectors << r.c, r.s, -r.s, r.c;
  sort_ascending(out);
  return out;
}

SymEigen eig3(const Mat& a) {
  const double q = a.trace() / 3.0;
  Mat b = a - q * Mat::Identity(3, 3);
  const double p2 = b.squaredNorm() / 6.0;
  const double p = std::sqrt(p2);
  const double amax = a.cwiseAbs().maxCoeff();
  if (p <= 1e-12 * std::max(1.0, amax)) return sym_eigen_jacobi(a);

  const Mat bn = b / p;
  const double r = std::clamp(bn.determinant() / 2.0, -1.0, 1.0);
  const double phi = std::acos(r) / 3.0;
  const double l_hi = q + 2.0 * p * std::cos(phi);
  const double l_lo = q + 2.0 * p * std::cos(phi + 2.0 * std::numbers::pi / 3.0);
  const double l_mid = 3.0 * q - l_hi - l_lo;
  // The root farthest from the middle one is well conditioned.
  const double iso = (l_hi - l_mid >= l_mid - l_lo) ? l_hi : l_lo;

  Mat m = a - iso * Mat::Identity(3, 3);
  Eigen::Vector3d r0 = m.row(0).transpose(), r1 = m.row(1).transpose(), r2 = m.row(2).transpose();
  Eigen::Vector3d cands[3] = {r0.cross(r1), r0.cross(r2), r1.cross(r2)};
  int best = 0;
  for (int i = 1; i < 3; ++i)
    if (cands[i].squaredNorm() > cands[best].squaredNorm()) best = i;
  const double cn = cands[best].norm();
  if (!(cn > 1e-30 * std::max(1.0, m.squaredNorm()))) return sym_eigen_jacobi(a);
  Eigen::Vector3d w = cands[best] / cn;

  // Orthonormal complement of w and the exact 2x2 block there.
  Eigen::Vector3d u = std::abs(w.x()) < 0.9 ? Eigen::Vector3d::UnitX() : Eigen::Vector3d::UnitY();
  u = (u - u.dot(w) * w).normalized();
  Eigen::Vector3d v = w.cross(u);
  Eigen::Matrix3d a3 = a;
  const SymEigen e2 = eig2(u.dot(a3 * u), u.dot(a3 * v), v.dot(a3 * v));

  SymEigen out;
  out.values.resize(3);
  out.vectors.resize(3, 3);
  out.values[0] = w.dot(a3 * w);
  out.vectors.col(0) = w;
  for (int j = 0; j < 2; ++j) {
    out.values[j + 1] = e2.values[j];
    Eigen::Vector3d x = e2.vectors(0, j) * u + e2.vectors(1, j) * v;
    out.vectors.col(j + 1) = x.normalized();
  }
  sort_ascending(out);
  return out;
}

}  // namespace

SymEigen sym_eigen_jacobi(const Mat& a_in, int max_sweeps) {
  const int n = static_cast<int>(a_in.rows());
  Mat a = 0.5 * (a_in + a_in.transpose());
  Mat v = Mat::Identity(n, n);
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += a(i, j) * a(i, j);
    if (off <= 1e-300 || off <= 1e-34 * a.squaredNorm()) break;
    for (int pi = 0; pi < n; ++pi) {
      for (int qi = pi + 1; qi < n; ++qi) {
        if (a(pi, qi) == 0.0) continue;
        const Rot r = jacobi_rotation(a(pi, pi), a(pi, qi), a(qi, qi));
        for (int k = 0; k < n; ++k) {
          const double akp = a(k, pi), akq = a(k, qi);
          a(k, pi) = r.c * akp - r.s * akq;
          a(k, qi) = r.s * akp + r.c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a(pi, k), aqk = a(qi, k);
          a(pi, k) = r.c * apk - r.s * aqk;
          a(qi, k) = r.s * apk + r.c * aqk;
        }
        for (int k = 0; k < n; ++k) {
          const double vkp = v(k, pi), vkq = v(k, qi);
          v(k, pi) = r.c * vkp - r.s * vkq;
          v(k, qi) = r.s * vkp + r.c * vkq;
        }
      }
    }
  }
  SymEigen out;
  out.values = a.diagonal();
  out.vectors = v;
  sort_ascending(out);
  return out;
}

SymEigen sym_eigen(const Mat& a) {
  if (a.rows() != a.cols()) throw InternalError("sym_eigen: non-square input");
  switch (a.rows()) {
    case 1: {
      SymEigen out;
      out.values = a.diagonal();
      out.vectors = Mat::Identity(1, 1);
      return out;
    }
    case 2:
      return eig2(a(0, 0), 0.5 * (a(0, 1) + a(1, 0)), a(1, 1));
    case 3:
      return eig3(0.5 * (a + a.transpose()));
    default:
      return sym_eigen_jacobi(a);
  }
}

}  // namespace qpc
