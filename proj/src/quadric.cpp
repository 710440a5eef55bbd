#include "qpc/quadric.hpp"

#include "qpc/errors.hpp"
#include "qpc/sym_eigen.hpp"

#include <algorithm>
#include <cmath>

namespace qpc {

namespace {

struct FamilyInfo {
  Family family;
  std::string_view name;
  int dim;
  std::array<int, kMaxDim> signs;
  int orientation;
};

constexpr std::array<FamilyInfo, 7> kFamilies{{
    {Family::Q0, "Q0", 4, {1, 1, 1, 1}, -1},
    {Family::Q1, "Q1", 4, {1, 1, 1, -1}, -1},
    {Family::Q2, "Q2", 4, {1, 1, -1, -1}, 1},
    {Family::Q3, "Q3", 4, {1, -1, -1, -1}, 1},
    {Family::q0, "q0", 3, {1, 1, 1, 0}, -1},
    {Family::q1, "q1", 3, {1, 1, -1, 0}, -1},
    {Family::q2, "q2", 3, {1, -1, -1, 0}, 1},
}};

const FamilyInfo& info(Family f) {
  for (const auto& fi : kFamilies)
    if (fi.family == f) return fi;
  throw InternalError("unknown family");
}

constexpr char kAxisName[] = {'a', 'b', 'c', 'd'};

// Strict ordering x > y with relative separation floor.
void require_greater(const std::array<double, kMaxDim>& s, int i, int j, double sep) {
  if (!(s[i] - s[j] > sep * std::max(s[i], s[j]))) {
    throw SpecError(std::string(1, kAxisName[i]) + ">" + kAxisName[j] + " violated");
  }
}

}  // namespace

std::string_view family_name(Family f) { return info(f).name; }

std::optional<Family> parse_family(std::string_view name) {
  for (const auto& fi : kFamilies)
    if (fi.name == name) return fi.family;
  return std::nullopt;
}

int ambient_dim(Family f) { return info(f).dim; }
bool is_r4(Family f) { return info(f).dim == 4; }

QuadricSpec QuadricSpec::from_squares(Family f, std::span<const double> squares, double separation) {
  const auto& fi = info(f);
  if (static_cast<int>(squares.size()) != fi.dim) {
    throw SpecError(std::string(fi.name) + " needs " + std::to_string(fi.dim) + " semiaxes, got " +
                    std::to_string(squares.size()));
  }
  QuadricSpec s;
  s.family_ = f;
  s.dim_ = fi.dim;
  s.signs_ = fi.signs;
  s.orientation_ = fi.orientation;
  for (int i = 0; i < fi.dim; ++i) {
    if (!std::isfinite(squares[i]) || !(squares[i] > 0.0))
      throw SpecError(std::string(1, kAxisName[i]) + ">0 violated");
    s.squares_[i] = squares[i];
  }
  const auto& q = s.squares_;
  switch (f) {
    case Family::Q0:
      require_greater(q, 0, 1, separation);
      require_greater(q, 1, 2, separation);
      require_greater(q, 2, 3, separation);
      break;
    case Family::Q1:
    case Family::q0:
      require_greater(q, 0, 1, separation);
      require_greater(q, 1, 2, separation);
      break;
    case Family::Q2:
      require_greater(q, 0, 1, separation);
      require_greater(q, 2, 3, separation);
      break;
    case Family::Q3:
      require_greater(q, 1, 2, separation);
      require_greater(q, 2, 3, separation);
      break;
    case Family::q1:
      require_greater(q, 0, 1, separation);
      break;
    case Family::q2:
      require_greater(q, 1, 2, separation);
      break;
  }
  double m = 0.0;
  for (int i = 0; i < fi.dim; ++i) m = std::max(m, q[i]);
  s.scale_ = std::sqrt(m);
  return s;
}

QuadricSpec QuadricSpec::from_semiaxes(Family f, std::span<const double> semiaxes, double separation) {
  std::vector<double> sq(semiaxes.begin(), semiaxes.end());
  for (auto& x : sq) {
    if (!(x > 0.0)) throw SpecError("semiaxes must be positive");
    x *= x;
  }
  return from_squares(f, sq, separation);
}

double QuadricSpec::semiaxis(int i) const { return std::sqrt(squares_[i]); }

QuadricSpec QuadricSpec::with_reversed_orientation() const {
  QuadricSpec s = *this;
  s.orientation_ = -orientation_;
  return s;
}

double evaluate(const QuadricSpec& spec, const Vec& p) {
  double f = -1.0;
  for (int i = 0; i < spec.dim(); ++i) f += p[i] * p[i] / spec.signed_square(i);
  return f;
}

Vec gradient(const QuadricSpec& spec, const Vec& p) {
  Vec g(spec.dim());
  for (int i = 0; i < spec.dim(); ++i) g[i] = 2.0 * p[i] / spec.signed_square(i);
  return g;
}

SurfacePoint make_surface_point(const QuadricSpec& spec, const Vec& p) {
  return SurfacePoint{p, evaluate(spec, p)};
}

SurfacePoint require_on_surface(const QuadricSpec& spec, const Vec& p, double tol) {
  if (p.size() != spec.dim()) throw SpecError("point has wrong dimension");
  if (tol < 0.0) tol = spec.surface_tolerance();
  SurfacePoint sp = make_surface_point(spec, p);
  if (!(std::abs(sp.residual) <= tol))
    throw NumericalError("point off surface: residual " + std::to_string(sp.residual));
  return sp;
}

Vec project_to_surface(const QuadricSpec& spec, const Vec& p, double tol, int max_iter) {
  if (tol < 0.0) tol = spec.surface_tolerance();
  Vec x = p;
  for (int it = 0; it < max_iter; ++it) {
    const double f = evaluate(spec, x);
    if (std::abs(f) <= tol) break;
    const Vec g = gradient(spec, x);
    const double gg = g.squaredNorm();
    if (gg < 1e-24) throw InternalError("vanishing gradient in projection");
    x -= (f / gg) * g;
  }
  return x;
}

Vec unit_normal(const QuadricSpec& spec, const Vec& p) {
  Vec g = gradient(spec, p);
  const double n = g.norm();
  if (n < 1e-12) throw InternalError("vanishing gradient");
  return (spec.orientation() / n) * g;
}

Mat tangent_basis(const QuadricSpec& spec, const Vec& p) {
  const Vec nrm = unit_normal(spec, p);
  const int n = spec.dim();
  // Householder reflection H with H*N = +-e_k; the other columns of H span T.
  int k = 0;
  nrm.cwiseAbs().maxCoeff(&k);
  Vec v = nrm;
  v[k] += (nrm[k] >= 0 ? 1.0 : -1.0);
  const double vv = v.squaredNorm();
  Mat h = Mat::Identity(n, n) - (2.0 / vv) * v * v.transpose();
  Mat t(n, n - 1);
  for (int j = 0, c = 0; j < n; ++j) {
    if (j == k) continue;
    t.col(c++) = h.col(j);
  }
  return t;
}

Mat shape_operator(const QuadricSpec& spec, const Vec& p) {
  const int n = spec.dim();
  const Vec g = gradient(spec, p);
  const double gn = g.norm();
  if (gn < 1e-12) throw InternalError("vanishing gradient");
  const Mat t = tangent_basis(spec, p);
  // -dN(X) restricted to T is -(sigma/|grad|) P H X with H = diag(2/e_i).
  Vec hdiag(n);
  for (int i = 0; i < n; ++i) hdiag[i] = 2.0 / spec.signed_square(i);
  Mat s = -(spec.orientation() / gn) * (t.transpose() * hdiag.asDiagonal() * t);
  return 0.5 * (s + s.transpose());
}

PrincipalData principal_data(const QuadricSpec& spec, const Vec& p) {
  const Mat t = tangent_basis(spec, p);
  const Mat s = shape_operator(spec, p);
  const SymEigen eig = sym_eigen(s);
  PrincipalData pd;
  const int m = spec.dim() - 1;
  pd.curvatures = eig.values;
  pd.directions = t * eig.vectors;
  for (int j = 0; j < m; ++j) {
    auto col = pd.directions.col(j);
    for (int i = 0; i < spec.dim(); ++i) {
      if (std::abs(col[i]) > 1e-12) {
        if (col[i] < 0) col = -col;
        break;
      }
    }
  }
  pd.gaps.resize(m - 1);
  for (int j = 0; j + 1 < m; ++j) pd.gaps[j] = pd.curvatures[j + 1] - pd.curvatures[j];
  pd.normal = unit_normal(spec, p);
  pd.residual = evaluate(spec, p);
  return pd;
}

}  // namespace qpc
