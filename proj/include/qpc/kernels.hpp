#pragma once

#include "qpc/confocal.hpp"
#include "qpc/exec.hpp"

#include <span>
#include <vector>

namespace qpc {

// Batch versions of the per-point operations. Exec::Serial is the reference
// path; Exec::Parallel must agree with it bit for bit.
std::vector<PrincipalData> batch_principal_data(const QuadricSpec& spec, std::span<const Vec> pts,
                                                Exec exec = Exec::Parallel);

struct DualOracleStats {
  double max_rel_err = 0.0;
  int points = 0;
};
// Sorted closed-form curvatures against the implicit shape operator.
DualOracleStats dual_oracle_error(const QuadricSpec& spec, std::span<const ChartCoords> coords,
                                  Exec exec = Exec::Parallel);

// max |chart_from_point(point_from_chart(c)) - c| over coords and all orthants.
double roundtrip_error(const QuadricSpec& spec, std::span<const ChartCoords> coords, Exec exec = Exec::Parallel);

// min over points of max(adjacent gaps): zero only at an umbilic.
double min_max_gap(const QuadricSpec& spec, std::span<const Vec> pts, Exec exec = Exec::Parallel);

}  // namespace qpc
