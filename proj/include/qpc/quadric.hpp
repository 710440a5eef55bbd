#pragma once

#include "qpc/types.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qpc {

enum class Family { Q0, Q1, Q2, Q3, q0, q1, q2 };

std::string_view family_name(Family f);
std::optional<Family> parse_family(std::string_view name);
int ambient_dim(Family f);
bool is_r4(Family f);

inline constexpr double kDefaultSeparation = 1e-9;

// Family plus squared semiaxes. The defining form is sum eps_i x_i^2 / alpha_i^2 - 1
// where eps_i is the family signature; everything downstream works with the
// signed squares e_i = eps_i * alpha_i^2.
class QuadricSpec {
 public:
  static QuadricSpec from_squares(Family f, std::span<const double> squares,
                                  double separation = kDefaultSeparation);
  static QuadricSpec from_semiaxes(Family f, std::span<const double> semiaxes,
                                   double separation = kDefaultSeparation);

  Family family() const { return family_; }
  int dim() const { return dim_; }
  double square(int i) const { return squares_[i]; }
  double semiaxis(int i) const;
  int signature(int i) const { return signs_[i]; }
  double signed_square(int i) const { return signs_[i] * squares_[i]; }
  std::span<const double> squares() const { return {squares_.data(), static_cast<size_t>(dim_)}; }

  // +1: N = grad/|grad|; -1: N = -grad/|grad|.
  int orientation() const { return orientation_; }
  QuadricSpec with_reversed_orientation() const;

  double scale() const { return scale_; }
  double surface_tolerance() const { return 1e-10 * scale_ * scale_; }

 private:
  QuadricSpec() = default;

  Family family_ = Family::Q0;
  int dim_ = 4;
  std::array<double, kMaxDim> squares_{};
  std::array<int, kMaxDim> signs_{};
  int orientation_ = -1;
  double scale_ = 1.0;
};

struct SurfacePoint {
  Vec coords;
  double residual = 0.0;
};

double evaluate(const QuadricSpec& spec, const Vec& p);
Vec gradient(const QuadricSpec& spec, const Vec& p);

SurfacePoint make_surface_point(const QuadricSpec& spec, const Vec& p);
// Throws NumericalError when |residual| exceeds tol (default: spec tolerance).
SurfacePoint require_on_surface(const QuadricSpec& spec, const Vec& p, double tol = -1.0);

// Newton iteration along the gradient onto F = 0.
Vec project_to_surface(const QuadricSpec& spec, const Vec& p, double tol = -1.0, int max_iter = 5);

Vec unit_normal(const QuadricSpec& spec, const Vec& p);

// Orthonormal basis of the tangent space, one column per direction.
Mat tangent_basis(const QuadricSpec& spec, const Vec& p);

// Matrix of D(-N) in tangent_basis(spec, p).
Mat shape_operator(const QuadricSpec& spec, const Vec& p);

struct PrincipalData {
  SlotVec curvatures;  // ascending
  Mat directions;      // ambient, one column per curvature
  SlotVec gaps;        // k2-k1 (, k3-k2)
  Vec normal;
  double residual = 0.0;

  int count() const { return static_cast<int>(curvatures.size()); }
};

PrincipalData principal_data(const QuadricSpec& spec, const Vec& p);

}  // namespace qpc
