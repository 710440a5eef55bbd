#pragma once

#include "qpc/exec.hpp"
#include "qpc/quadric.hpp"

#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace qpc {

enum class Verdict { Closed, Escaped, UmbilicApproach, StepFailure, LengthLimit };
std::string_view verdict_name(Verdict v);

struct TraceConfig {
  int foliation = 1;  // 1-based, sorted-curvature convention
  double h0 = 0.0;
  double min_step = 0.0;
  double max_step = 0.0;
  double projection_tol = 0.0;
  double gap_stop = 1e-5;
  double escape_radius = 0.0;
  double max_length = 0.0;
  double close_tol = 0.0;
  double rk_tol = 0.0;  // local error per step (absolute)

  static TraceConfig defaults(const QuadricSpec& spec, int foliation);
  void validate(const QuadricSpec& spec) const;  // throws SpecError
};

struct LeafTrace {
  std::vector<Vec> points;
  std::vector<double> s;  // arclength, 0 at the seed (negative on the backward half)
  double arclength = 0.0;
  Verdict verdict = Verdict::StepFailure;
  Verdict forward = Verdict::StepFailure;
  Verdict backward = Verdict::StepFailure;  // unused when the forward half closes
  double return_gap = -1.0;                 // Closed only
  double min_eigen_gap = 0.0;
  int foliation = 1;
  int steps = 0;
  int rejected = 0;
};

// Unit eigenvector of the i-th sorted curvature (1-based). Oriented to agree
// with `previous` when given. Throws DegenerateDirectionError when a gap
// adjacent to slot i is below gap_stop.
Vec direction_at(const QuadricSpec& spec, const Vec& p, int i, const Vec* previous = nullptr,
                 double gap_stop = 1e-5);

double adjacent_gap(const PrincipalData& pd, int i);

LeafTrace trace_leaf(const QuadricSpec& spec, const Vec& p0, const TraceConfig& cfg);

struct CensusReport {
  std::vector<Verdict> verdicts;
  std::vector<double> return_gaps;
  std::vector<double> arclengths;
  std::vector<double> min_gaps;

  int count(Verdict v) const;
  double fraction(Verdict v) const;
  double max_return_gap() const;  // over Closed leaves
};

CensusReport leaf_census(const QuadricSpec& spec, std::span<const Vec> seeds, const TraceConfig& cfg,
                         Exec exec = Exec::Parallel);

}  // namespace qpc
