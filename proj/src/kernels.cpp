#include "qpc/kernels.hpp"

#include "qpc/errors.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <limits>

namespace qpc {

std::vector<PrincipalData> batch_principal_data(const QuadricSpec& spec, std::span<const Vec> pts, Exec exec) {
  const int n = static_cast<int>(pts.size());
  std::vector<PrincipalData> out(n);
  if (exec == Exec::Serial) {
    for (int j = 0; j < n; ++j) out[j] = principal_data(spec, pts[j]);
  } else {
#pragma omp parallel for schedule(static) num_threads(thread_count())
    for (int j = 0; j < n; ++j) out[j] = principal_data(spec, pts[j]);
  }
  return out;
}

namespace {

double oracle_err(const QuadricSpec& spec, const ChartCoords& c) {
  const ClosedFormCurvatures k = closed_form_curvatures(spec, c);
  const PrincipalData pd = principal_data(spec, point_from_chart(spec, c).coords);
  double e = 0.0;
  for (int j = 0; j < pd.count(); ++j)
    e = std::max(e, std::abs(k.sorted[j] - pd.curvatures[j]) / std::abs(pd.curvatures[j]));
  return e;
}

double roundtrip_one(const QuadricSpec& spec, const ChartCoords& c0) {
  double e = 0.0;
  const int orthants = 1 << spec.dim();
  for (int o = 0; o < orthants; ++o) {
    ChartCoords c = c0;
    for (int i = 0; i < kMaxDim; ++i) c.orthant[i] = (o >> i) & 1 ? -1 : 1;
    const ChartCoords back = chart_from_point(spec, point_from_chart(spec, c).coords);
    e = std::max(e, (back.values - c.values).cwiseAbs().maxCoeff());
    for (int i = 0; i < spec.dim(); ++i)
      if (back.orthant[i] != c.orthant[i]) e = std::numeric_limits<double>::infinity();
  }
  return e;
}

double max_gap_one(const QuadricSpec& spec, const Vec& p) {
  const PrincipalData pd = principal_data(spec, p);
  return pd.gaps.maxCoeff();
}

}  // namespace

DualOracleStats dual_oracle_error(const QuadricSpec& spec, std::span<const ChartCoords> coords, Exec exec) {
  const int n = static_cast<int>(coords.size());
  double m = 0.0;
  if (exec == Exec::Serial) {
    for (int j = 0; j < n; ++j) m = std::max(m, oracle_err(spec, coords[j]));
  } else {
#pragma omp parallel for reduction(max : m) schedule(static) num_threads(thread_count())
    for (int j = 0; j < n; ++j) m = std::max(m, oracle_err(spec, coords[j]));
  }
  return {m, n};
}

double roundtrip_error(const QuadricSpec& spec, std::span<const ChartCoords> coords, Exec exec) {
  const int n = static_cast<int>(coords.size());
  double m = 0.0;
  if (exec == Exec::Serial) {
    for (int j = 0; j < n; ++j) m = std::max(m, roundtrip_one(spec, coords[j]));
  } else {
#pragma omp parallel for reduction(max : m) schedule(static) num_threads(thread_count())
    for (int j = 0; j < n; ++j) m = std::max(m, roundtrip_one(spec, coords[j]));
  }
  return m;
}

double min_max_gap(const QuadricSpec& spec, std::span<const Vec> pts, Exec exec) {
  const int n = static_cast<int>(pts.size());
  double m = std::numeric_limits<double>::infinity();
  if (exec == Exec::Serial) {
    for (int j = 0; j < n; ++j) m = std::min(m, max_gap_one(spec, pts[j]));
  } else {
#pragma omp parallel for reduction(min : m) schedule(static) num_threads(thread_count())
    for (int j = 0; j < n; ++j) m = std::min(m, max_gap_one(spec, pts[j]));
  }
  return m;
}

}  // namespace qpc
