#include "qpc/exec.hpp"
#include "qpc/kernels.hpp"
#include "qpc/sampling.hpp"

#include <doctest.h>

#include <cstdlib>

using namespace qpc;

namespace {
const std::vector<double> k4321{4, 3, 2, 1};
}

TEST_CASE("parallel kernels agree with the serial reference") {
  for (Family f : {Family::Q0, Family::Q1, Family::Q2, Family::Q3}) {
    auto s = QuadricSpec::from_squares(f, k4321);
    const auto cs = sample_chart(s, 300, 5);
    const auto pts = sample_surface_box(s, 300, 5);
    const auto a = batch_principal_data(s, pts, Exec::Serial);
    const auto b = batch_principal_data(s, pts, Exec::Parallel);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].curvatures == b[i].curvatures);
      CHECK(a[i].directions == b[i].directions);
    }
    CHECK(dual_oracle_error(s, cs, Exec::Serial).max_rel_err == dual_oracle_error(s, cs, Exec::Parallel).max_rel_err);
    CHECK(roundtrip_error(s, cs, Exec::Serial) == roundtrip_error(s, cs, Exec::Parallel));
    CHECK(min_max_gap(s, pts, Exec::Serial) == min_max_gap(s, pts, Exec::Parallel));
  }
}

TEST_CASE("thread budget") {
  ::setenv("QPC_THREADS", "1", 1);
  CHECK(thread_count() == 1);
  ::setenv("QPC_THREADS", "0", 1);
  CHECK(thread_count() >= 1);
  ::unsetenv("QPC_THREADS");
  CHECK(thread_count() >= 1);
}

TEST_CASE("samplers are deterministic and in range") {
  for (Family f : {Family::Q0, Family::Q1, Family::Q2, Family::Q3, Family::q0, Family::q1, Family::q2}) {
    auto s = QuadricSpec::from_squares(f, is_r4(f) ? k4321 : std::vector<double>{4, 3, 1});
    const ChartLayout lay = chart_layout(s);
    const auto a = sample_chart(s, 200, 9), b = sample_chart(s, 200, 9);
    REQUIRE(a.size() == 200);
    for (size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].values == b[i].values);
      CHECK(a[i].orthant == b[i].orthant);
      for (int k = 0; k < lay.slots; ++k) CHECK(lay.iv[k].contains(a[i].values[k]));
    }
    for (const Vec& p : sample_surface_box(s, 200, 9)) {
      CHECK(std::abs(evaluate(s, p)) < 1e-10);
      CHECK(p.cwiseAbs().maxCoeff() <= 5 * s.scale() * (1 + 1e-12));
    }
    const auto seeds = census_seeds(s, 16, 42);
    CHECK(seeds.size() == 16);
    CHECK(seeds == census_seeds(s, 16, 42));
  }
  Halton h(3, 1);
  double x[3];
  for (int i = 0; i < 100; ++i) {
    h.next(x);
    for (double v : x) {
      CHECK(v >= 0);
      CHECK(v < 1);
    }
  }
}
