#include "qpc/errors.hpp"
#include "qpc/umbilic_locus.hpp"

#include <doctest.h>

#include <cmath>
#include <map>

using namespace qpc;

namespace {

const std::vector<double> k4321{4, 3, 2, 1};
const std::vector<double> kOdd{6, 3.5, 2, 0.7};

// Conics written directly in graph coordinates, keyed by the vanishing coordinate.
struct Expected {
  int hyperplane;
  std::array<int, 2> coords;
  std::array<double, 2> coef;
};

std::vector<Expected> expected_conics(Family f, const std::vector<double>& sq) {
  const double a = sq[0], b = sq[1], c = sq[2], d = sq[3];  // squares
  switch (f) {
    case Family::Q0:
      return {{2, {0, 1}, {(a - d) / (a - c), (b - d) / (b - c)}},
              {1, {0, 2}, {(a - d) / (a - b), -(c - d) / (b - c)}}};
    case Family::Q1: return {{1, {0, 2}, {(a + d) / (a - b), -(c + d) / (b - c)}}};
    case Family::Q2: return {{2, {0, 1}, {(d + a) / (c + a), (b + d) / (b + c)}}};
    case Family::Q3:
      return {{1, {2, 3}, {(a + c) / (b - c), (a + d) / (b - d)}},
              {2, {1, 3}, {-(a + b) / (b - c), (a + d) / (c - d)}}};
    default: return {};
  }
}

double conic_value(const QuadricSpec& s, const ConicCoefficients& cc, const Vec& p) {
  double v = 0;
  for (int k = 0; k < 2; ++k) {
    const double q = p[cc.coords[k]] / s.semiaxis(cc.coords[k]);
    v += cc.coef[k] * q * q;
  }
  return v - 1.0;
}

// Frenet torsion from central differences of the curve.
double fd_torsion(const LocusCurve& c, double th, double h) {
  auto r = [&](double t) { return drop_coordinate(c.point(t), c.curve().hyperplane); };
  const Vec pm2 = r(th - 2 * h), pm1 = r(th - h), p0 = r(th), pp1 = r(th + h), pp2 = r(th + 2 * h);
  const Eigen::Vector3d d1 = (pp1 - pm1) / (2 * h);
  const Eigen::Vector3d d2 = (pp1 - 2 * p0 + pm1) / (h * h);
  const Eigen::Vector3d d3 = (pp2 - 2 * pp1 + 2 * pm1 - pm2) / (2 * h * h * h);
  const Eigen::Vector3d x = d1.cross(d2);
  return x.dot(d3) / x.squaredNorm();
}

}  // namespace

TEST_CASE("locus counts, conics and kinds") {
  for (const auto& sq : {k4321, kOdd}) {
    for (Family f : {Family::Q0, Family::Q1, Family::Q2, Family::Q3}) {
      CAPTURE(family_name(f));
      auto s = QuadricSpec::from_squares(f, sq);
      auto curves = partially_umbilic_locus(s);
      const std::map<Family, size_t> count{{Family::Q0, 4}, {Family::Q1, 4}, {Family::Q2, 2}, {Family::Q3, 6}};
      REQUIRE(curves.size() == count.at(f));
      const auto exp = expected_conics(f, sq);
      for (const auto& cv : curves) {
        bool matched = false;
        for (const Expected& e : exp) {
          if (e.hyperplane != cv.hyperplane) continue;
          matched = true;
          CHECK(cv.conic.coords == e.coords);
          CHECK(cv.conic.coef[0] == doctest::Approx(e.coef[0]).epsilon(1e-13));
          CHECK(cv.conic.coef[1] == doctest::Approx(e.coef[1]).epsilon(1e-13));
        }
        CHECK(matched);
        // on the compact family both sheets of the graph join each hyperbola into closed curves
        if (f == Family::Q0) CHECK(cv.closed);
        else CHECK(cv.closed == cv.conic.ellipse());
        LocusCurve lc(s, cv);
        for (const LocusSample& ls : sample_locus(lc, 40)) {
          CHECK(std::abs(conic_value(s, cv.conic, ls.point.coords)) < 1e-12);
          CHECK(ls.point.coords[cv.hyperplane] == 0.0);
          if (f == Family::Q3) CHECK(ls.point.coords[0] * cv.sheet > 0);
        }
      }
    }
  }
}

TEST_CASE("measured coincidence kinds") {
  auto kinds = [](Family f) {
    std::map<int, std::vector<Coincidence>> by_plane;
    for (const auto& cv : partially_umbilic_locus(QuadricSpec::from_squares(f, k4321)))
      by_plane[cv.hyperplane].push_back(cv.kind);
    return by_plane;
  };
  auto all_of = [](const std::vector<Coincidence>& v, Coincidence k) {
    return std::all_of(v.begin(), v.end(), [&](Coincidence x) { return x == k; });
  };
  auto q0 = kinds(Family::Q0);
  CHECK(all_of(q0[2], Coincidence::P23));  // ellipse
  CHECK(all_of(q0[1], Coincidence::P12));  // hyperbola
  CHECK(all_of(kinds(Family::Q1)[1], Coincidence::P23));
  CHECK(all_of(kinds(Family::Q2)[2], Coincidence::P23));
  auto q3 = kinds(Family::Q3);
  CHECK(q3[1].size() == 2);
  CHECK(q3[2].size() == 4);
  CHECK(all_of(q3[1], Coincidence::P12));  // closed curves, y = 0
  CHECK(all_of(q3[2], Coincidence::P23));  // arcs, z = 0
}

TEST_CASE("reversing the orientation swaps the coincidence kind") {
  for (Family f : {Family::Q0, Family::Q1, Family::Q2, Family::Q3}) {
    auto s = QuadricSpec::from_squares(f, k4321);
    auto a = partially_umbilic_locus(s);
    auto b = partially_umbilic_locus(s.with_reversed_orientation());
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i) CHECK(a[i].kind != b[i].kind);
  }
}

TEST_CASE("locus samples") {
  auto s = QuadricSpec::from_squares(Family::Q2, k4321);
  for (const auto& cv : partially_umbilic_locus(s)) {
    LocusCurve lc(s, cv);
    REQUIRE(lc.closed());
    // two samples split the length: the second is the first reflected through the conic's centre
    auto two = sample_locus(lc, 2);
    CHECK(two[1].s == doctest::Approx(lc.length() / 2));
    const Vec p = two[0].point.coords, q = two[1].point.coords;
    for (int i : cv.conic.coords) CHECK(q[i] == doctest::Approx(-p[i]).epsilon(1e-9));
    CHECK(q[3] == doctest::Approx(p[3]).epsilon(1e-9));
    auto many = sample_locus(lc, 64);
    for (size_t j = 1; j < many.size(); ++j) {
      CHECK(many[j].s > many[j - 1].s);
      CHECK(lc.s_of(many[j].theta) == doctest::Approx(many[j].s).epsilon(1e-10));
    }
    CHECK_THROWS_AS(sample_locus(lc, 1), SpecError);
  }
  auto s1 = QuadricSpec::from_squares(Family::Q1, k4321);
  for (const auto& cv : partially_umbilic_locus(s1)) {
    LocusCurve lc(s1, cv);
    CHECK(!lc.closed());
    CHECK(lc.s_min() == doctest::Approx(-lc.s_max()));
    CHECK(lc.point(lc.param_hi()).norm() == doctest::Approx(5 * s1.scale()).epsilon(1e-10));
    auto ss = sample_locus(lc, 11);
    CHECK(ss.front().s == doctest::Approx(lc.s_min()));
    CHECK(ss.back().s == doctest::Approx(lc.s_max()));
  }
}

TEST_CASE("torsion and curvature against finite differences") {
  for (Family f : {Family::Q0, Family::Q1, Family::Q2, Family::Q3}) {
    auto s = QuadricSpec::from_squares(f, k4321);
    for (const auto& cv : partially_umbilic_locus(s)) {
      LocusCurve lc(s, cv);
      double tmax = 0, err = 0;
      for (int j = 1; j < 40; ++j) {
        const double th = lc.param_lo() + (lc.param_hi() - lc.param_lo()) * (j + 0.13) / 40;
        const double tau = lc.torsion(th);
        tmax = std::max(tmax, std::abs(tau));
        err = std::max(err, std::abs(tau - fd_torsion(lc, th, 1e-3)));
        CHECK(lc.curvature(th) > 1e-6);  // biregular
      }
      CAPTURE(family_name(f));
      CHECK(err < 1e-4 * std::max(1.0, tmax));
    }
  }
}

TEST_CASE("torsion zeros sit on coordinate planes") {
  auto s1 = QuadricSpec::from_squares(Family::Q1, k4321);
  for (const auto& cv : partially_umbilic_locus(s1)) {
    LocusCurve lc(s1, cv);
    auto z = locus_torsion_zeros(lc);
    REQUIRE(z.size() == 1);
    // the symmetry point of the arc is where t vanishes; z stays away from 0 along the arc
    const Vec p = lc.point(lc.theta_of(z[0]));
    CHECK(std::abs(p[3]) < 1e-9);
    for (const LocusSample& ls : sample_locus(lc, 50)) CHECK(std::abs(ls.point.coords[2]) > 0.1);
  }
  auto s2 = QuadricSpec::from_squares(Family::Q2, k4321);
  for (const auto& cv : partially_umbilic_locus(s2)) {
    LocusCurve lc(s2, cv);
    auto z = locus_torsion_zeros(lc);
    REQUIRE(z.size() == 4);
    auto x = lc.crossing_arclengths();
    for (size_t k = 0; k < 4; ++k) CHECK(z[k] == doctest::Approx(x[k]).epsilon(1e-9));
    // the curve never meets t = 0
    for (const LocusSample& ls : sample_locus(lc, 50)) CHECK(std::abs(ls.point.coords[3]) > 0.1);
  }
}

TEST_CASE("profile and window") {
  auto s = QuadricSpec::from_squares(Family::Q3, k4321);
  auto curves = partially_umbilic_locus(s);
  LocusCurve lc(s, curves[0]);
  auto prof = locus_torsion_profile(lc, 64);
  CHECK(prof.size() == 64);
  CHECK_THROWS_AS(locus_torsion_profile(lc, 8), SpecError);
  CHECK_THROWS_AS(partially_umbilic_locus(QuadricSpec::from_squares(Family::q0, std::vector<double>{4, 3, 1})),
                  SpecError);
}

TEST_CASE("auxiliary quadrics") {
  auto s = QuadricSpec::from_squares(Family::Q2, k4321);
  auto aux = auxiliary_quadric(s, 2);
  CHECK(aux.family() == Family::q1);
  CHECK(aux.square(0) == 4);
  CHECK(aux.square(2) == 1);
  auto s3 = QuadricSpec::from_squares(Family::Q3, k4321);
  CHECK(auxiliary_quadric(s3, 1).family() == Family::q2);
  CHECK(auxiliary_quadric(s3, 2).family() == Family::q2);
  auto s1 = QuadricSpec::from_squares(Family::Q1, k4321);
  CHECK(auxiliary_quadric(s1, 1).family() == Family::q1);
}

TEST_CASE("graph chart forms against finite differences") {
  for (Family f : {Family::Q0, Family::Q1, Family::Q2, Family::Q3}) {
    CAPTURE(family_name(f));
    auto s = QuadricSpec::from_squares(f, k4321);
    for (int sign : {1, -1}) {
      GraphChart gc = graph_chart(s, sign);
      // a few points where Delta > 0
      const std::vector<Vec> qs = [&] {
        std::vector<Vec> out;
        const double pts[4][3] = {{0.2, 0.3, 0.1}, {0.5, -0.2, 0.4}, {1.3, 0.4, 0.2}, {-0.9, 1.1, 0.3}};
        for (auto& p : pts) {
          Vec q(3);
          q << p[0], p[1], p[2];
          if (graph_delta(gc, q) > 0.05) out.push_back(q);
        }
        return out;
      }();
      REQUIRE(!qs.empty());
      for (const Vec& q : qs) {
        const Vec p = graph_point(gc, q);
        CHECK(std::abs(evaluate(s, p)) < 1e-12);
        CHECK((graph_coords(gc, p) - q).norm() < 1e-14);
        const FundamentalForms ff = graph_chart_forms(gc, q);
        const Vec n = unit_normal(s, p);
        auto at = [&](int i, double di, int j, double dj) {
          Vec r = q;
          r[i] += di;
          r[j] += dj;
          return graph_point(gc, r);
        };
        const double h = 1e-4, H = 1e-3;
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j) {
            const Vec di = (at(i, h, i, 0) - at(i, -h, i, 0)) / (2 * h);
            const Vec dj = (at(j, h, j, 0) - at(j, -h, j, 0)) / (2 * h);
            CHECK(di.dot(dj) == doctest::Approx(ff.g(i, j)).epsilon(1e-6).scale(1.0));
            auto mixed = [&](double k) {
              return ((at(i, k, j, k) - at(i, k, j, -k) - at(i, -k, j, k) + at(i, -k, j, -k)) / (4 * k * k)).dot(n);
            };
            const double b = (4 * mixed(H / 2) - mixed(H)) / 3;
            CHECK(b == doctest::Approx(ff.b(i, j)).epsilon(1e-6).scale(1.0));
          }
      }
    }
  }
}

TEST_CASE("displayed Q2 graph block") {
  auto s = QuadricSpec::from_squares(Family::Q2, k4321);
  GraphChart gc = graph_chart(s, 1);
  Vec q(3);
  for (auto [u, v, w] : {std::array<double, 3>{1.2, 0.4, 0.3}, {0.3, 1.5, -0.2}, {-1.1, -0.8, 0.6}}) {
    q << u, v, w;
    const FundamentalForms ours = graph_chart_forms(gc, q);
    const FundamentalForms disp = q2_displayed_graph_forms(s, q);
    CHECK((ours.g - disp.g).norm() < 1e-13 * ours.g.norm());
    // same block up to a positive factor and a sign: the displayed normal
    // points against the family orientation used here
    const double mu = -disp.b(0, 0) / ours.b(0, 0);
    CHECK(mu > 0);
    CHECK((disp.b + mu * ours.b).norm() < 1e-12 * disp.b.norm());
  }
}

TEST_CASE("Q2 locus in the graph chart") {
  auto s = QuadricSpec::from_squares(Family::Q2, k4321);
  GraphChart gc = graph_chart(s, 1);
  double worst_condition = 0, min_first = 1e300;
  for (const auto& cv : partially_umbilic_locus(s)) {
    if (cv.base[3] < 0) gc = graph_chart(s, -1);
    else gc = graph_chart(s, 1);
    LocusCurve lc(s, cv);
    for (const LocusSample& ls : sample_locus(lc, 40)) {
      const Vec q = graph_coords(gc, ls.point.coords);
      CHECK(std::abs(q[2]) < 1e-15);
      const FundamentalForms d = q2_displayed_graph_forms(s, q);
      // at w = 0 the w direction is principal; the coincidence is between its
      // curvature and one eigenvalue of the (u, v) block
      CHECK(std::abs(d.g(0, 2)) + std::abs(d.g(1, 2)) + std::abs(d.b(0, 2)) + std::abs(d.b(1, 2)) < 1e-15);
      const double kw = d.b(2, 2) / d.g(2, 2);
      const Eigen::Matrix2d B = d.b.topLeftCorner(2, 2), G = d.g.topLeftCorner(2, 2);
      const double cond = (B - kw * G).determinant() / (B.norm() * G.norm());
      worst_condition = std::max(worst_condition, std::abs(cond));
      // the (u, v)-only system does not vanish along the curve
      const double first = d.b(0, 0) * d.g(1, 1) - d.b(1, 1) * d.g(0, 0);
      min_first = std::min(min_first, std::abs(first) / (B.norm() * G.norm()));
    }
  }
  CHECK(worst_condition < 1e-12);
  CHECK(min_first > 1e-3);
}
