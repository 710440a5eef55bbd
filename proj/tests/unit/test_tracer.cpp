#include "qpc/errors.hpp"
#include "qpc/sampling.hpp"
#include "qpc/tracer.hpp"
#include "qpc/umbilic_locus.hpp"

#include <doctest.h>

#include <cmath>

using namespace qpc;

namespace {

const std::vector<double> k4321{4, 3, 2, 1};
const std::vector<double> k431{4, 3, 1};

Vec chart_point(const QuadricSpec& s, std::initializer_list<double> lam, Orthant o = {1, 1, 1, 1}) {
  ChartCoords c;
  c.values.resize(static_cast<int>(lam.size()));
  int i = 0;
  for (double x : lam) c.values[i++] = x;
  c.orthant = o;
  return point_from_chart(s, c).coords;
}

// Slot whose coordinate line carries foliation i at this point.
int leaf_slot(const QuadricSpec& s, const Vec& p, int i) {
  return closed_form_curvatures(s, chart_from_point(s, p)).slot_of[i - 1];
}

}  // namespace

TEST_CASE("direction field") {
  auto s = QuadricSpec::from_squares(Family::Q2, k4321);
  const Vec p = chart_point(s, {2.5, 1.5, -3.5});
  const PrincipalData pd = principal_data(s, p);
  Vec d[3];
  for (int i = 1; i <= 3; ++i) {
    d[i - 1] = direction_at(s, p, i);
    CHECK(d[i - 1].norm() == doctest::Approx(1.0));
    CHECK(std::abs(d[i - 1].dot(pd.normal)) < 1e-14);
  }
  CHECK(std::abs(d[0].dot(d[1])) < 1e-12);
  CHECK(std::abs(d[1].dot(d[2])) < 1e-12);
  // orientation follows the previous direction
  const Vec flipped = -d[1];
  CHECK((direction_at(s, p, 2, &flipped) + d[1]).norm() < 1e-14);
  // it is the coordinate line of the matching slot
  const ChartCoords c = chart_from_point(s, p);
  const int k = leaf_slot(s, p, 2);
  const Vec t = chart_tangent(s, c, k).normalized();
  CHECK(std::abs(std::abs(t.dot(d[1])) - 1.0) < 1e-12);

  CHECK_THROWS_AS(direction_at(s, p, 0), SpecError);
  CHECK_THROWS_AS(direction_at(s, p, 4), SpecError);
  // on the partially umbilic curve the coincident fields are undefined
  auto curves = partially_umbilic_locus(s);
  LocusCurve lc(s, curves[0]);
  const Vec q = lc.point(0.4);
  CHECK_THROWS_AS(direction_at(s, q, 2), DegenerateDirectionError);
  CHECK_THROWS_AS(direction_at(s, q, 3), DegenerateDirectionError);
  CHECK_NOTHROW(direction_at(s, q, 1));
  try {
    direction_at(s, q, 3);
  } catch (const DegenerateDirectionError& e) {
    CHECK(e.gap() < 1e-10);
  }
}

TEST_CASE("config validation") {
  auto s = QuadricSpec::from_squares(Family::Q0, k4321);
  TraceConfig c = TraceConfig::defaults(s, 1);
  CHECK_NOTHROW(c.validate(s));
  c.foliation = 4;
  CHECK_THROWS_AS(c.validate(s), SpecError);
  c = TraceConfig::defaults(s, 1);
  c.h0 = 1.0;
  CHECK_THROWS_AS(c.validate(s), SpecError);
  auto s3 = QuadricSpec::from_squares(Family::q1, k431);
  c = TraceConfig::defaults(s3, 3);
  CHECK_THROWS_AS(c.validate(s3), SpecError);
  // off-surface seed
  Vec p(4);
  p << 1, 1, 1, 1;
  CHECK_THROWS_AS(trace_leaf(s, p, TraceConfig::defaults(s, 1)), NumericalError);
}

TEST_CASE("closed leaf: invariants along the trace") {
  auto s = QuadricSpec::from_squares(Family::Q2, k4321);
  const Vec p0 = chart_point(s, {2.5, 1.5, -3.5});
  const TraceConfig cfg = TraceConfig::defaults(s, 1);
  const LeafTrace lt = trace_leaf(s, p0, cfg);
  REQUIRE(lt.verdict == Verdict::Closed);
  CHECK(lt.return_gap < 1e-6);
  CHECK(lt.return_gap >= 0);
  CHECK(lt.points.size() == lt.s.size());
  CHECK(lt.s.front() == 0.0);
  CHECK(lt.arclength == doctest::Approx(lt.s.back()));

  const ChartCoords c0 = chart_from_point(s, p0);
  const int k = leaf_slot(s, p0, 1);
  double worst_orth = 0, worst_chord = 0, worst_res = 0, worst_drift = 0;
  Vec prev = direction_at(s, p0, 1);
  for (size_t j = 0; j < lt.points.size(); ++j) {
    const Vec& p = lt.points[j];
    worst_res = std::max(worst_res, std::abs(evaluate(s, p)));
    const ChartCoords c = chart_from_point(s, p);
    for (int m = 0; m < 3; ++m)
      if (m != k) worst_drift = std::max(worst_drift, std::abs(c.values[m] - c0.values[m]));
    if (j + 1 < lt.points.size()) {
      // the chord of a step matches the tangent at its midpoint to second order in h
      const Vec chord = (lt.points[j + 1] - p).normalized();
      const Vec mid = project_to_surface(s, 0.5 * (p + lt.points[j + 1]));
      for (int other : {2, 3}) worst_chord = std::max(worst_chord, std::abs(chord.dot(direction_at(s, mid, other))));
    }
    const Vec d1 = direction_at(s, p, 1, &prev);
    prev = d1;
    for (int other : {2, 3}) worst_orth = std::max(worst_orth, std::abs(d1.dot(direction_at(s, p, other))));
  }
  CHECK(worst_res < cfg.projection_tol * 1.01);
  CHECK(worst_drift < 1e-7);
  CHECK(worst_orth < 1e-6);
  CHECK(worst_chord < 1e-4);
  // halving the step cap changes the return gap by little
  TraceConfig fine = cfg;
  fine.max_step = cfg.max_step / 2;
  fine.h0 = std::min(fine.h0, fine.max_step);
  const LeafTrace lt2 = trace_leaf(s, p0, fine);
  REQUIRE(lt2.verdict == Verdict::Closed);
  CHECK(std::abs(lt2.return_gap - lt.return_gap) < 4e-6);
  CHECK(lt2.arclength == doctest::Approx(lt.arclength).epsilon(1e-6));
}

TEST_CASE("open leaf: both halves escape and join continuously") {
  auto s = QuadricSpec::from_squares(Family::Q1, k4321);
  const Vec p0 = census_seeds(s, 1, 7)[0];
  const LeafTrace lt = trace_leaf(s, p0, TraceConfig::defaults(s, 1));
  CHECK(lt.verdict == Verdict::Escaped);
  CHECK(lt.forward == Verdict::Escaped);
  CHECK(lt.backward == Verdict::Escaped);
  CHECK(lt.return_gap < 0);
  // s increases through the seed and the tangent does not flip there
  size_t j0 = 0;
  for (size_t j = 1; j < lt.s.size(); ++j) {
    CHECK(lt.s[j] > lt.s[j - 1]);
    if (lt.s[j] == 0.0) j0 = j;
  }
  REQUIRE(j0 > 0);
  REQUIRE(j0 + 1 < lt.points.size());
  const Vec a = (lt.points[j0] - lt.points[j0 - 1]).normalized();
  const Vec b = (lt.points[j0 + 1] - lt.points[j0]).normalized();
  CHECK(a.dot(b) > 0.9);
  CHECK(lt.points.front().norm() >= 100 * s.scale() * 0.99);
  CHECK(lt.points.back().norm() >= 100 * s.scale() * 0.99);
}

TEST_CASE("approach to the partially umbilic set") {
  auto s = QuadricSpec::from_squares(Family::Q2, k4321);
  // just above the curve u = v = c^2, following the v line towards it
  const Vec p0 = chart_point(s, {2.0 + 1e-6, 1.5, -3.5});
  const LeafTrace lt = trace_leaf(s, p0, TraceConfig::defaults(s, 3));
  CHECK(lt.verdict == Verdict::UmbilicApproach);
  CHECK(lt.min_eigen_gap < 1e-4);
  // the stop is near the locus
  auto curves = partially_umbilic_locus(s);
  double best = 1e300;
  for (const Vec& p : {lt.points.front(), lt.points.back()}) {
    const PrincipalData pd = principal_data(s, p);
    best = std::min(best, pd.gaps[1]);
  }
  CHECK(best < 1e-4);
}

TEST_CASE("length limit") {
  auto s = QuadricSpec::from_squares(Family::Q1, k4321);
  const Vec p0 = census_seeds(s, 1, 7)[0];
  TraceConfig cfg = TraceConfig::defaults(s, 1);
  cfg.max_length = 3.0;
  cfg.escape_radius = 1e6;
  const LeafTrace lt = trace_leaf(s, p0, cfg);
  CHECK(lt.verdict == Verdict::LengthLimit);
  CHECK(lt.arclength <= 6.0 + cfg.max_step);
}

TEST_CASE("census: parallel equals serial") {
  auto s = QuadricSpec::from_squares(Family::Q0, k4321);
  const auto seeds = census_seeds(s, 8, 42);
  const TraceConfig cfg = TraceConfig::defaults(s, 2);
  const CensusReport a = leaf_census(s, seeds, cfg, Exec::Serial);
  const CensusReport b = leaf_census(s, seeds, cfg, Exec::Parallel);
  CHECK(a.verdicts == b.verdicts);
  CHECK(a.return_gaps == b.return_gaps);
  CHECK(a.arclengths == b.arclengths);
  CHECK(a.count(Verdict::Closed) == 8);
  CHECK(a.fraction(Verdict::Closed) == 1.0);
  CHECK(a.max_return_gap() < 1e-6);
}

TEST_CASE("R3 leaves") {
  // one-sheeted hyperboloid: the line field of k2 closes around the neck, k1 runs off
  auto s = QuadricSpec::from_squares(Family::q1, k431);
  const auto seeds = census_seeds(s, 8, 3);
  CensusReport closed = leaf_census(s, seeds, TraceConfig::defaults(s, 2), Exec::Serial);
  CensusReport open = leaf_census(s, seeds, TraceConfig::defaults(s, 1), Exec::Serial);
  CHECK(closed.count(Verdict::Closed) == 8);
  CHECK(closed.max_return_gap() < 1e-6);
  CHECK(open.count(Verdict::Escaped) == 8);
  // ellipsoid away from its umbilics: both foliations close
  auto e = QuadricSpec::from_squares(Family::q0, k431);
  const auto es = census_seeds(e, 8, 3);
  for (int i : {1, 2}) CHECK(leaf_census(e, es, TraceConfig::defaults(e, i)).count(Verdict::Closed) == 8);
}
