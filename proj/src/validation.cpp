#include "qpc/validation.hpp"

#include "qpc/conformal.hpp"
#include "qpc/errors.hpp"
#include "qpc/io.hpp"
#include "qpc/kernels.hpp"
#include "qpc/quadrature.hpp"
#include "qpc/r3.hpp"
#include "qpc/sampling.hpp"
#include "qpc/tracer.hpp"
#include "qpc/umbilic_locus.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

namespace qpc {
namespace {

constexpr Family kR4[] = {Family::Q0, Family::Q1, Family::Q2, Family::Q3};

CriterionResult criterion(std::string name) {
  CriterionResult r;
  r.name = std::move(name);
  return r;
}

std::string fam(Family f) { return std::string(family_name(f)); }

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

std::string join(const std::vector<std::string>& parts, const char* sep = ", ") {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

// Finite-difference derivatives of the chart map.
struct ChartFd {
  const QuadricSpec& spec;
  const ChartCoords& c;

  Vec at(int i, double di, int j, double dj) const {
    SlotVec lam = c.values;
    lam[i] += di;
    if (j >= 0) lam[j] += dj;
    return point_from_roots(spec, lam, c.orthant);
  }
  Vec first(int i, double h) const { return (at(i, h, -1, 0) - at(i, -h, -1, 0)) / (2 * h); }
  Vec mixed(int i, int j, double h) const {
    return (at(i, h, j, h) - at(i, h, j, -h) - at(i, -h, j, h) + at(i, -h, j, -h)) / (4 * h * h);
  }
  // One Richardson step removes the h^2 term.
  Vec mixed_extrapolated(int i, int j, double h) const { return (4 * mixed(i, j, h / 2) - mixed(i, j, h)) / 3; }
};

bool sign_pattern_holds(Family f, const SlotVec& k) {
  switch (f) {
    case Family::Q0: return 0 < k[0] && k[0] < k[1] && k[1] < k[2];
    case Family::Q1:
    case Family::Q2: return k[0] < 0 && 0 < k[1] && k[1] <= k[2];
    case Family::Q3: return 0 < k[0] && k[0] <= k[1] && k[1] <= k[2];
    case Family::q0:
    case Family::q2: return 0 < k[0] && k[0] <= k[1];
    case Family::q1: return k[0] < 0 && 0 < k[1];
  }
  return false;
}

const char* sign_statement(Family f) {
  switch (f) {
    case Family::Q0: return "0<k1<k2<k3";
    case Family::Q1:
    case Family::Q2: return "k1<0<k2<=k3";
    case Family::Q3: return "0<k1<=k2<=k3";
    case Family::q0:
    case Family::q2: return "0<k1<=k2";
    case Family::q1: return "k1<0<k2";
  }
  return "";
}

int expected_locus_count(Family f) {
  switch (f) {
    case Family::Q0:
    case Family::Q1: return 4;
    case Family::Q2: return 2;
    case Family::Q3: return 6;  // three on each sheet
    default: return 0;
  }
}

// Coordinate-plane crossings of a locus curve, found from the point itself
// (sign changes of the non-hyperplane coordinates) and returned as arclength.
std::vector<double> measured_crossings(const LocusCurve& c, int scan = 2048) {
  const int m = c.curve().hyperplane;
  const double lo = c.param_lo(), hi = c.param_hi();
  const double h = (hi - lo) / scan;
  auto theta_at = [&](int j) { return lo + (j + 0.5) * h; };
  std::vector<double> out;
  const int last = c.closed() ? scan : scan - 1;
  for (int j = 0; j < last; ++j) {
    const double t0 = theta_at(j);
    const double t1 = c.closed() && j == scan - 1 ? theta_at(0) + (hi - lo) : theta_at(j + 1);
    const Vec p0 = c.point(t0), p1 = c.point(t1);
    for (int i = 0; i < p0.size(); ++i) {
      if (i == m || p0[i] * p1[i] > 0) continue;
      double a = t0, b = t1;
      const double sa = p0[i];
      for (int it = 0; it < 200 && b - a > 1e-15 * std::max(1.0, std::abs(b)); ++it) {
        const double mid = 0.5 * (a + b);
        (c.point(mid)[i] * sa > 0 ? a : b) = mid;
      }
      double th = 0.5 * (a + b);
      if (c.closed() && th >= hi) th -= hi - lo;
      double s = c.s_of(th);
      if (c.closed() && s >= c.length()) s -= c.length();
      out.push_back(s);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

double periodic_distance(double a, double b, double period) {
  double d = std::abs(a - b);
  if (period > 0) d = std::min(d, period - d);
  return d;
}

double nearest(double s, const std::vector<double>& set, double period) {
  double best = std::numeric_limits<double>::infinity();
  for (double x : set) best = std::min(best, periodic_distance(s, x, period));
  return best;
}

}  // namespace

QuadricSpec reference_r4(Family f) {
  const double sq[] = {4, 3, 2, 1};
  return QuadricSpec::from_squares(f, sq);
}

QuadricSpec reference_r3(Family f) {
  const double sq[] = {4, 3, 1};
  return QuadricSpec::from_squares(f, sq);
}

// --- curvature oracles --------------------------------------------------------

CriterionResult check_dual_oracle(std::uint64_t seed, Exec exec) {
  CriterionResult r = criterion("dual_oracle_curvatures");
  constexpr double tol = 1e-8;
  r.pass = true;
  std::vector<std::string> parts;
  for (Family f : kR4) {
    const QuadricSpec s = reference_r4(f);
    const auto coords = sample_chart(s, 1000, seed);
    const DualOracleStats st = dual_oracle_error(s, coords, exec);
    r.metrics[fam(f)] = {{"points", st.points}, {"max_rel_err", st.max_rel_err}};
    r.pass = r.pass && st.points == 1000 && st.max_rel_err < tol;
    parts.push_back(fam(f) + " " + sci(st.max_rel_err));
  }
  r.metrics["tolerance"] = tol;
  r.detail = "max rel err " + join(parts) + " (tol " + sci(tol) + ", 1000 pts each)";
  return r;
}

CriterionResult check_chart_roundtrip(std::uint64_t seed, Exec exec) {
  CriterionResult r = criterion("chart_roundtrip");
  constexpr double tol = 1e-9;
  r.pass = true;
  std::vector<std::string> parts;
  for (Family f : kR4) {
    const QuadricSpec s = reference_r4(f);
    const auto coords = sample_chart(s, 1000, seed);
    const double err = roundtrip_error(s, coords, exec);
    r.metrics[fam(f)] = {{"points", 1000}, {"orthants", 16}, {"max_err", err}};
    r.pass = r.pass && err < tol;
    parts.push_back(fam(f) + " " + sci(err));
  }
  r.metrics["tolerance"] = tol;
  r.detail = "max err " + join(parts) + " (tol " + sci(tol) + ", 1000 pts x 16 orthants)";
  return r;
}

CriterionResult check_principal_chart(std::uint64_t seed) {
  CriterionResult r = criterion("principal_chart_fd");
  constexpr double tol = 1e-6;
  constexpr double h_first = 1e-5;  // central differences for the metric
  constexpr double h_mixed = 1e-3;  // base step of the extrapolated mixed difference
  constexpr double margin = 0.05;
  r.pass = true;
  std::vector<std::string> parts;
  for (Family f : kR4) {
    const QuadricSpec s = reference_r4(f);
    const auto coords = sample_chart(s, 200, seed, margin);
    double goff = 0, boff = 0;
    for (const ChartCoords& c : coords) {
      ChartFd fd{s, c};
      const Vec p = point_from_roots(s, c.values, c.orthant);
      const Vec n = unit_normal(s, p);
      Vec d[3];
      for (int i = 0; i < 3; ++i) d[i] = fd.first(i, h_first);
      for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
          goff = std::max(goff, std::abs(d[i].dot(d[j])));
          boff = std::max(boff, std::abs(fd.mixed_extrapolated(i, j, h_mixed).dot(n)));
        }
    }
    r.metrics[fam(f)] = {{"points", static_cast<int>(coords.size())}, {"max_g_offdiag", goff}, {"max_b_offdiag", boff}};
    r.pass = r.pass && goff < tol && boff < tol;
    parts.push_back(fam(f) + " g " + sci(goff) + " b " + sci(boff));
  }
  r.metrics["tolerance"] = tol;
  r.metrics["h_first"] = h_first;
  r.metrics["h_mixed"] = h_mixed;
  r.metrics["margin"] = margin;
  r.detail = "max |offdiag| " + join(parts) + " (tol " + sci(tol) + ", 200 pts)";
  return r;
}

CriterionResult check_sign_patterns(std::uint64_t seed) {
  CriterionResult r = criterion("sign_patterns");
  r.pass = true;
  std::vector<std::string> parts;
  for (Family f : {Family::Q0, Family::Q1, Family::Q2, Family::Q3, Family::q0, Family::q1, Family::q2}) {
    const QuadricSpec s = is_r4(f) ? reference_r4(f) : reference_r3(f);
    const auto coords = sample_chart(s, 1000, seed);
    int good = 0;
    for (const ChartCoords& c : coords) {
      const SlotVec closed = closed_form_curvatures(s, c).sorted;
      const SlotVec implicit = principal_data(s, point_from_chart(s, c).coords).curvatures;
      good += sign_pattern_holds(f, closed) && sign_pattern_holds(f, implicit);
    }
    const int n = static_cast<int>(coords.size());
    r.metrics[fam(f)] = {{"statement", sign_statement(f)}, {"points", n}, {"holding", good}};
    r.pass = r.pass && good == n;
    parts.push_back(fam(f) + " " + std::to_string(good) + "/" + std::to_string(n));
  }
  r.detail = join(parts);
  return r;
}

CriterionResult check_r4_umbilic_free(std::uint64_t seed, Exec exec) {
  CriterionResult r = criterion("r4_umbilic_free");
  constexpr double tol = 1e-3;
  r.pass = true;
  std::vector<std::string> parts;
  for (Family f : kR4) {
    const QuadricSpec s = reference_r4(f);
    const auto pts = sample_surface_box(s, 10000, seed);
    const double g = min_max_gap(s, pts, exec);
    r.metrics[fam(f)] = {{"points", static_cast<int>(pts.size())}, {"min_max_gap", g}};
    r.pass = r.pass && static_cast<int>(pts.size()) == 10000 && g > tol;
    parts.push_back(fam(f) + " " + sci(g));
  }
  r.metrics["threshold"] = tol;
  r.detail = "min max(gap12,gap23) " + join(parts) + " (> " + sci(tol) + ", 1e4 pts)";
  return r;
}

// --- partially umbilic locus ---------------------------------------------------

CriterionResult check_locus_membership() {
  CriterionResult r = criterion("locus_counts_membership");
  constexpr double coincide_tol = 1e-8, separate_tol = 1e-3, residual_tol = 1e-10;
  constexpr int n = 200;
  r.pass = true;
  std::vector<std::string> parts;
  for (Family f : kR4) {
    const QuadricSpec s = reference_r4(f);
    const auto curves = partially_umbilic_locus(s);
    int count = static_cast<int>(curves.size());
    bool ok = count == expected_locus_count(f);
    if (f == Family::Q3) {
      const int plus = static_cast<int>(std::count_if(curves.begin(), curves.end(), [](auto& c) { return c.sheet > 0; }));
      ok = ok && plus == 3;
      r.metrics[fam(f)]["per_sheet"] = {plus, count - plus};
    }
    double max_coincide = 0, min_separate = std::numeric_limits<double>::infinity(), max_res = 0, max_aux = 0;
    nlohmann::ordered_json kinds = nlohmann::ordered_json::array();
    for (const auto& cv : curves) {
      LocusCurve lc(s, cv);
      const QuadricSpec aux = auxiliary_quadric(s, cv.hyperplane);
      kinds.push_back(std::string(coincidence_name(cv.kind)));
      for (const LocusSample& ls : sample_locus(lc, n)) {
        const int ci = cv.kind == Coincidence::P12 ? 0 : 1;
        max_coincide = std::max(max_coincide, ls.principal.gaps[ci]);
        min_separate = std::min(min_separate, ls.principal.gaps[1 - ci]);
        max_res = std::max(max_res, std::abs(ls.point.residual));
        max_aux = std::max(max_aux, std::abs(evaluate(aux, drop_coordinate(ls.point.coords, cv.hyperplane))));
      }
    }
    ok = ok && max_coincide < coincide_tol && min_separate > separate_tol && max_res < residual_tol &&
         max_aux < residual_tol;
    r.metrics[fam(f)]["curves"] = count;
    r.metrics[fam(f)]["kinds"] = kinds;
    r.metrics[fam(f)]["max_coincidence_gap"] = max_coincide;
    r.metrics[fam(f)]["min_other_gap"] = min_separate;
    r.metrics[fam(f)]["max_surface_residual"] = max_res;
    r.metrics[fam(f)]["max_auxiliary_residual"] = max_aux;
    r.pass = r.pass && ok;
    parts.push_back(fam(f) + " " + std::to_string(count) + " curves, gap " + sci(max_coincide) + "/" +
                    sci(min_separate) + ", res " + sci(std::max(max_res, max_aux)));
  }
  r.metrics["samples_per_curve"] = n;
  r.detail = join(parts, "; ");
  return r;
}

CriterionResult check_q2_principal_line() {
  CriterionResult r = criterion("q2_locus_principal_line");
  constexpr double tol = 1e-6;
  constexpr int n = 50;
  const QuadricSpec s = reference_r4(Family::Q2);
  double worst = 0, worst_tangency = 0;
  int samples = 0;
  nlohmann::ordered_json which = nlohmann::ordered_json::array();
  for (const auto& cv : partially_umbilic_locus(s)) {
    LocusCurve lc(s, cv);
    const QuadricSpec aux = auxiliary_quadric(s, cv.hyperplane);
    int counts[2] = {0, 0};
    for (const LocusSample& ls : sample_locus(lc, n)) {
      Eigen::Vector3d d[4];
      lc.jets(ls.theta, d);
      const Vec t = d[1].normalized();
      const Vec q = drop_coordinate(ls.point.coords, cv.hyperplane);
      const PrincipalData pd = principal_data(aux, q);
      worst_tangency = std::max(worst_tangency, std::abs(t.dot(pd.normal)));
      double best = std::numeric_limits<double>::infinity();
      int arg = 0;
      for (int k = 0; k < pd.count(); ++k) {
        const Vec e = pd.directions.col(k);
        const double perp = (t - t.dot(e) * e).norm();
        if (perp < best) best = perp, arg = k;
      }
      ++counts[arg];
      worst = std::max(worst, best);
      ++samples;
    }
    which.push_back({counts[0], counts[1]});
  }
  r.pass = samples > 0 && worst < tol && worst_tangency < tol;
  r.metrics = {{"auxiliary", std::string(family_name(auxiliary_quadric(s, 2).family()))},
               {"samples_per_curve", n},
               {"max_sine", worst},
               {"max_normal_component", worst_tangency},
               {"eigen_index_counts", which},
               {"tolerance", tol}};
  r.detail = "max sine to an eigendirection " + sci(worst) + ", normal component " + sci(worst_tangency) +
             " over " + std::to_string(samples) + " samples (tol " + sci(tol) + ")";
  return r;
}

CriterionResult check_torsion_zeros() {
  CriterionResult r = criterion("torsion_zeros");
  constexpr double tol = 1e-6;
  r.pass = true;
  std::vector<std::string> parts;
  for (Family f : {Family::Q1, Family::Q2, Family::Q3}) {
    const QuadricSpec s = reference_r4(f);
    nlohmann::ordered_json per = nlohmann::ordered_json::array();
    bool ok = true;
    double worst = 0;
    std::string counts;
    for (const auto& cv : partially_umbilic_locus(s)) {
      LocusCurve lc(s, cv);
      const auto zeros = locus_torsion_zeros(lc);
      const auto crossings = measured_crossings(lc);
      const double period = lc.closed() ? lc.length() : 0.0;
      double off = 0;
      for (double z : zeros) off = std::max(off, nearest(z, crossings, period));
      worst = std::max(worst, off);
      bool good = off < tol;
      if (f == Family::Q1) {
        // one zero, at the symmetry point of the arc (s = 0)
        good = good && zeros.size() == 1 && std::abs(zeros[0]) < tol;
      } else if (f == Family::Q2) {
        good = good && zeros.size() == 4 && crossings.size() == 4;
        // every crossing carries a zero
        for (double x : crossings) good = good && nearest(x, zeros, period) < tol;
      }
      ok = ok && good;
      counts += (counts.empty() ? "" : "/") + std::to_string(zeros.size());
      per.push_back({{"curve", cv.component},
                     {"closed", cv.closed},
                     {"zeros", zeros},
                     {"crossings", crossings},
                     {"max_offset", off}});
    }
    r.metrics[fam(f)] = per;
    r.pass = r.pass && ok;
    parts.push_back(fam(f) + " zeros " + counts + " max offset " + sci(worst));
  }
  r.metrics["tolerance"] = tol;
  r.detail = join(parts, "; ");
  return r;
}

// --- leaf census ------------------------------------------------------------------

CriterionResult check_leaf_census(std::uint64_t seed, Exec exec) {
  CriterionResult r = criterion("leaf_census");
  constexpr double gap_tol = 1e-6;
  constexpr int n = 32;
  struct Case {
    Family f;
    int foliation;
    Verdict expect;
  };
  const Case cases[] = {{Family::Q0, 1, Verdict::Closed},
                        {Family::Q1, 1, Verdict::Escaped},
                        {Family::Q2, 1, Verdict::Closed},
                        {Family::Q2, 2, Verdict::Escaped},
                        {Family::Q3, 3, Verdict::Closed}};
  r.pass = true;
  std::vector<std::string> parts;
  nlohmann::ordered_json table = nlohmann::ordered_json::array();
  for (const Case& c : cases) {
    const QuadricSpec s = reference_r4(c.f);
    const auto seeds = census_seeds(s, n, seed);
    const CensusReport rep = leaf_census(s, seeds, TraceConfig::defaults(s, c.foliation), exec);
    const int hit = rep.count(c.expect);
    const double gap = rep.max_return_gap();
    bool ok = hit == n;
    if (c.expect == Verdict::Closed) ok = ok && gap < gap_tol;
    nlohmann::ordered_json verdicts = nlohmann::ordered_json::object();
    for (Verdict v : {Verdict::Closed, Verdict::Escaped, Verdict::UmbilicApproach, Verdict::StepFailure,
                      Verdict::LengthLimit})
      if (rep.count(v)) verdicts[std::string(verdict_name(v))] = rep.count(v);
    table.push_back({{"family", fam(c.f)},
                     {"foliation", c.foliation},
                     {"expected", std::string(verdict_name(c.expect))},
                     {"verdicts", verdicts},
                     {"max_return_gap", gap}});
    r.pass = r.pass && ok;
    std::string part = fam(c.f) + " F" + std::to_string(c.foliation) + " " + std::to_string(hit) + "/" +
                       std::to_string(n) + " " + std::string(verdict_name(c.expect));
    if (c.expect == Verdict::Closed) part += " gap " + sci(gap);
    parts.push_back(part);
  }
  r.metrics = {{"seeds", n}, {"seed", seed}, {"return_gap_tolerance", gap_tol}, {"table", table}};
  r.detail = join(parts, "; ");
  return r;
}

// --- R3 quadrics ------------------------------------------------------------------

CriterionResult check_r3_suite(std::uint64_t seed) {
  CriterionResult r = criterion("r3_suite");
  std::vector<std::string> parts;
  bool ok = true;

  // closed-form umbilics of the ellipsoid and the two-sheeted hyperboloid
  for (Family f : {Family::q0, Family::q2}) {
    const QuadricSpec s = reference_r3(f);
    const auto ums = r3_umbilics(s);
    double gap = 0, res = 0;
    for (const Vec& p : ums) {
      const PrincipalData pd = principal_data(s, p);
      gap = std::max(gap, pd.gaps[0]);
      res = std::max(res, std::abs(pd.residual));
    }
    const bool good = ums.size() == 4 && gap < 1e-8 && res < 1e-10;
    ok = ok && good;
    r.metrics[fam(f) + "_umbilics"] = {{"count", static_cast<int>(ums.size())}, {"max_gap", gap}, {"max_residual", res}};
    parts.push_back(fam(f) + " " + std::to_string(ums.size()) + " umbilics gap " + sci(gap));
  }

  {
    const QuadricSpec s = reference_r3(Family::q1);
    const auto pts = sample_surface_box(s, 10000, seed);
    const double g = min_max_gap(s, pts, Exec::Serial);
    const bool good = r3_umbilics(s).empty() && static_cast<int>(pts.size()) == 10000 && g > 1e-3;
    ok = ok && good;
    r.metrics["q1_min_gap"] = g;
    parts.push_back("q1 min gap " + sci(g));
  }

  const QuadricSpec s = reference_r3(Family::q0);
  const EllipsoidConformal ec(s);
  const ConformalRect& rect = ec.rect();
  {
    const auto ums = r3_umbilics(s);
    double worst = 0;
    std::vector<int> hits(ums.size(), 0);
    for (int a : {1, -1})
      for (int b : {1, -1}) {
        const Vec p = ec.point(a * rect.s1, b * rect.s2);
        double best = std::numeric_limits<double>::infinity();
        std::size_t arg = 0;
        for (std::size_t k = 0; k < ums.size(); ++k) {
          const double d = (p - ums[k]).norm();
          if (d < best) best = d, arg = k;
        }
        if (!ums.empty()) ++hits[arg];
        worst = std::max(worst, best);
      }
    const bool bijective = std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; });
    ok = ok && worst < 1e-10 && bijective;
    r.metrics["corner_to_umbilic"] = worst;
    parts.push_back("corners " + sci(worst));
  }

  {
    // interior conformality by central differences of the chart
    std::mt19937_64 rng(seed);
    constexpr double h = 1e-5;
    double worst = 0, worst_f = 0;
    for (int i = 0; i < 100; ++i) {
      const double m1 = 0.02 + 0.88 * u01(rng), m2 = 0.02 + 0.88 * u01(rng);
      const double r1 = (u01(rng) < 0.5 ? -1 : 1) * m1 * rect.s1;
      const double r2 = (u01(rng) < 0.5 ? -1 : 1) * m2 * rect.s2;
      const Vec d1 = (ec.point(r1 + h, r2) - ec.point(r1 - h, r2)) / (2 * h);
      const Vec d2 = (ec.point(r1, r2 + h) - ec.point(r1, r2 - h)) / (2 * h);
      const double E = d1.squaredNorm(), G = d2.squaredNorm(), F = d1.dot(d2);
      worst = std::max(worst, std::abs(E - G) / E);
      worst_f = std::max(worst_f, std::abs(F) / E);
    }
    ok = ok && worst < 1e-5 && worst_f < 1e-5;
    r.metrics["conformality"] = {{"points", 100}, {"max_rel_E_minus_G", worst}, {"max_rel_F", worst_f}};
    parts.push_back("|E-G|/E " + sci(worst));
  }

  {
    const ChartLayout lay = chart_layout(s);
    double worst = 0;
    nlohmann::ordered_json vals = nlohmann::ordered_json::array();
    for (int k = 0; k < 2; ++k) {
      const SlotDensity rho(s, lay.iv[k], {});
      auto f = [&](double x, double dl, double dh) { return rho(x, dl, dh); };
      const double a = integrate_sqrt_singular(f, lay.iv[k].lo, lay.iv[k].hi).value;
      const double b = integrate_tanh_sinh(f, lay.iv[k].lo, lay.iv[k].hi).value;
      worst = std::max(worst, std::abs(a - b));
      vals.push_back({a, b});
    }
    ok = ok && worst < 1e-8;
    r.metrics["s_integrals"] = {{"pairs", vals}, {"max_diff", worst}, {"s1", rect.s1}, {"s2", rect.s2}};
    parts.push_back("s1/s2 schemes " + sci(worst));
  }

  r.pass = ok;
  r.detail = join(parts, "; ");
  return r;
}

// --- suites -------------------------------------------------------------------------

bool SuiteReport::pass() const {
  return !criteria.empty() && std::all_of(criteria.begin(), criteria.end(), [](auto& c) { return c.pass; });
}

nlohmann::ordered_json SuiteReport::to_json() const {
  nlohmann::ordered_json j;
  j["suite"] = suite;
  j["seed"] = seed;
  j["pass"] = pass();
  j["criteria"] = nlohmann::ordered_json::array();
  for (const auto& c : criteria)
    j["criteria"].push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}, {"metrics", c.metrics}});
  return j;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"oracle", "roundtrip", "locus", "census", "torsion", "r3", "all"};
  return names;
}

bool is_suite(std::string_view name) {
  const auto& n = suite_names();
  return std::find(n.begin(), n.end(), name) != n.end();
}

SuiteReport run_suite(std::string_view suite, std::uint64_t seed, Exec exec) {
  if (!is_suite(suite)) throw SpecError("unknown suite '" + std::string(suite) + "'");
  SuiteReport rep{std::string(suite), seed, {}};
  const bool all = suite == "all";
  if (all || suite == "oracle") {
    rep.criteria.push_back(check_dual_oracle(seed, exec));
    rep.criteria.push_back(check_principal_chart(seed));
    rep.criteria.push_back(check_sign_patterns(seed));
    rep.criteria.push_back(check_r4_umbilic_free(seed, exec));
  }
  if (all || suite == "roundtrip") rep.criteria.push_back(check_chart_roundtrip(seed, exec));
  if (all || suite == "locus") {
    rep.criteria.push_back(check_locus_membership());
    rep.criteria.push_back(check_q2_principal_line());
  }
  if (all || suite == "torsion") rep.criteria.push_back(check_torsion_zeros());
  if (all || suite == "census") rep.criteria.push_back(check_leaf_census(seed, exec));
  if (all || suite == "r3") rep.criteria.push_back(check_r3_suite(seed));
  return rep;
}

}  // namespace qpc
