#include "qpc/tracer.hpp"

#include "qpc/errors.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qpc {

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Closed: return "Closed";
    case Verdict::Escaped: return "Escaped";
    case Verdict::UmbilicApproach: return "UmbilicApproach";
    case Verdict::StepFailure: return "StepFailure";
    case Verdict::LengthLimit: return "LengthLimit";
  }
  return "?";
}

TraceConfig TraceConfig::defaults(const QuadricSpec& spec, int foliation) {
  const double sc = spec.scale();
  TraceConfig c;
  c.foliation = foliation;
  c.h0 = 1e-3 * sc;
  c.min_step = 1e-9 * sc;
  c.max_step = 0.05 * sc;
  c.projection_tol = 1e-10 * sc * sc;
  c.gap_stop = 1e-5;
  c.escape_radius = 100.0 * sc;
  c.max_length = 1e3 * sc;
  c.close_tol = 1e-4 * sc;
  c.rk_tol = 1e-12 * sc;
  return c;
}

void TraceConfig::validate(const QuadricSpec& spec) const {
  if (foliation < 1 || foliation > spec.dim() - 1)
    throw SpecError("foliation index must be in 1.." + std::to_string(spec.dim() - 1));
  if (!(min_step > 0 && min_step <= h0 && h0 <= max_step)) throw SpecError("need 0 < min_step <= h0 <= max_step");
  if (!(close_tol > projection_tol)) throw SpecError("need close_tol > projection_tol");
  if (!(projection_tol > 0 && rk_tol > 0 && gap_stop >= 0)) throw SpecError("tolerances must be positive");
  if (!(escape_radius > 0 && max_length > 0)) throw SpecError("escape radius and length must be positive");
}

double adjacent_gap(const PrincipalData& pd, int i) {
  double g = std::numeric_limits<double>::infinity();
  if (i > 1) g = std::min(g, pd.gaps[i - 2]);
  if (i < pd.count()) g = std::min(g, pd.gaps[i - 1]);
  return g;
}

Vec direction_at(const QuadricSpec& spec, const Vec& p, int i, const Vec* previous, double gap_stop) {
  const PrincipalData pd = principal_data(spec, p);
  if (i < 1 || i > pd.count()) throw SpecError("foliation index out of range");
  const double g = adjacent_gap(pd, i);
  if (g < gap_stop) {
    std::ostringstream os;
    os << "line field " << i << " undefined: adjacent curvature gap " << g;
    throw DegenerateDirectionError(g, os.str());
  }
  Vec d = pd.directions.col(i - 1);
  if (previous && d.dot(*previous) < 0) d = -d;
  return d;
}

namespace {

// Dormand-Prince 5(4)
constexpr double kA[7][6] = {
    {0, 0, 0, 0, 0, 0},
    {1.0 / 5, 0, 0, 0, 0, 0},
    {3.0 / 40, 9.0 / 40, 0, 0, 0, 0},
    {44.0 / 45, -56.0 / 15, 32.0 / 9, 0, 0, 0},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729, 0, 0},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656, 0},
    {35.0 / 384, 0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84}};
constexpr double kB5[7] = {35.0 / 384, 0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84, 0};
constexpr double kB4[7] = {5179.0 / 57600, 0, 7571.0 / 16695, 393.0 / 640, -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};

struct StepResult {
  bool ok = false;
  bool degenerate = false;
  Vec y;
  double err = 0.0;
};

StepResult rk_step(const QuadricSpec& spec, const Vec& p, const Vec& d, double h, int i, double gap_stop) {
  StepResult r;
  Vec k[7];
  try {
    for (int st = 0; st < 7; ++st) {
      Vec y = p;
      for (int j = 0; j < st; ++j) y += h * kA[st][j] * k[j];
      k[st] = st == 0 ? d : direction_at(spec, y, i, &d, gap_stop);
    }
  } catch (const DegenerateDirectionError&) {
    r.degenerate = true;
    return r;
  }
  Vec y5 = p, y4 = p;
  for (int j = 0; j < 7; ++j) {
    y5 += h * kB5[j] * k[j];
    y4 += h * kB4[j] * k[j];
  }
  r.ok = true;
  r.y = y5;
  r.err = (y5 - y4).norm();
  return r;
}

struct Half {
  std::vector<Vec> pts;
  std::vector<double> s;
  Verdict verdict = Verdict::StepFailure;
  double return_gap = -1.0;
  double min_gap = std::numeric_limits<double>::infinity();
  int steps = 0, rejected = 0;
};

Half trace_half(const QuadricSpec& spec, const Vec& p0, const Vec& d0, const TraceConfig& cfg, bool detect_close) {
  Half out;
  const int i = cfg.foliation;
  Vec p = p0, d = d0;
  double s = 0.0, h = cfg.h0;
  out.pts.push_back(p);
  out.s.push_back(0.0);
  double f_prev = 0.0;
  PrincipalData pd = principal_data(spec, p);
  out.min_gap = adjacent_gap(pd, i);
  auto section = [&](const Vec& x) { return (x - p0).dot(d0); };

  for (;;) {
    if (s >= cfg.max_length) {
      out.verdict = Verdict::LengthLimit;
      return out;
    }
    // Cap the step where the adjacent gap is small relative to the curvature scale.
    const double kscale = std::max(pd.curvatures.cwiseAbs().maxCoeff(), 1e-300);
    const double cap = std::clamp(adjacent_gap(pd, i) / (0.05 * kscale), 0.02, 1.0) * cfg.max_step;
    h = std::clamp(std::min(h, cap), cfg.min_step, cfg.max_step);

    StepResult st = rk_step(spec, p, d, h, i, cfg.gap_stop);
    if (st.degenerate) {
      ++out.rejected;
      if (h <= cfg.min_step * 1.000001) {
        out.verdict = Verdict::UmbilicApproach;
        return out;
      }
      h *= 0.5;
      continue;
    }
    if (!std::isfinite(st.err)) {
      out.verdict = Verdict::StepFailure;
      return out;
    }
    if (st.err > cfg.rk_tol) {
      ++out.rejected;
      if (h <= cfg.min_step * 1.000001) {
        out.verdict = Verdict::StepFailure;
        return out;
      }
      h = std::max(cfg.min_step, h * std::max(0.1, 0.9 * std::pow(cfg.rk_tol / st.err, 0.2)));
      continue;
    }
    Vec y = project_to_surface(spec, st.y, cfg.projection_tol, 5);
    if (std::abs(evaluate(spec, y)) > cfg.projection_tol) {
      out.verdict = Verdict::StepFailure;
      return out;
    }
    Vec dn;
    try {
      dn = direction_at(spec, y, i, &d, cfg.gap_stop);
    } catch (const DegenerateDirectionError& e) {
      out.min_gap = std::min(out.min_gap, e.gap());
      out.pts.push_back(y);
      out.s.push_back(s + h);
      out.verdict = Verdict::UmbilicApproach;
      return out;
    }
    if (dn.dot(d) < 0.9) {  // direction jumped: shrink
      ++out.rejected;
      if (h <= cfg.min_step * 1.000001) {
        out.verdict = Verdict::StepFailure;
        return out;
      }
      h *= 0.5;
      continue;
    }

    const double f_new = section(y);
    if (detect_close && f_prev < 0.0 && f_new >= 0.0) {
      // Locate the section crossing within this step (Illinois on the step length).
      double a = 0.0, b = h, fa = f_prev, fb = f_new;
      double hs = h;
      Vec ys = y;
      int side = 0;
      for (int it = 0; it < 80 && b - a > 1e-15 * h; ++it) {
        const double c = (fa == fb) ? 0.5 * (a + b) : b - fb * (b - a) / (fb - fa);
        StepResult sc = rk_step(spec, p, d, c, i, cfg.gap_stop);
        if (!sc.ok) break;
        ys = project_to_surface(spec, sc.y, cfg.projection_tol, 5);
        hs = c;
        const double fc = section(ys);
        if (std::abs(fc) <= 1e-15 * spec.scale()) break;
        if ((fc < 0) == (fa < 0)) {
          a = c;
          fa = fc;
          if (side == -1) fb *= 0.5;
          side = -1;
        } else {
          b = c;
          fb = fc;
          if (side == 1) fa *= 0.5;
          side = 1;
        }
      }
      const double gap = (ys - p0).norm();
      if (gap < cfg.close_tol) {
        double align = 0.0;
        try {
          align = direction_at(spec, ys, i, &d, cfg.gap_stop).dot(d0);
        } catch (const DegenerateDirectionError&) {
        }
        if (align > 0.999) {
          out.pts.push_back(ys);
          out.s.push_back(s + hs);
          out.return_gap = gap;
          out.verdict = Verdict::Closed;
          ++out.steps;
          return out;
        }
      }
    }

    s += h;  // unit-speed field: the step length is the arclength
    p = y;
    d = dn;
    f_prev = f_new;
    out.pts.push_back(p);
    out.s.push_back(s);
    ++out.steps;
    pd = principal_data(spec, p);
    out.min_gap = std::min(out.min_gap, adjacent_gap(pd, i));

    if (p.norm() > cfg.escape_radius) {
      out.verdict = Verdict::Escaped;
      return out;
    }
    const double grow = st.err > 0 ? std::min(5.0, 0.9 * std::pow(cfg.rk_tol / st.err, 0.2)) : 5.0;
    h = std::min(cfg.max_step, h * std::max(1.0, grow));
  }
}

}  // namespace

LeafTrace trace_leaf(const QuadricSpec& spec, const Vec& p0, const TraceConfig& cfg) {
  cfg.validate(spec);
  require_on_surface(spec, p0, cfg.projection_tol);
  const Vec d0 = direction_at(spec, p0, cfg.foliation, nullptr, cfg.gap_stop);

  LeafTrace lt;
  lt.foliation = cfg.foliation;
  Half fwd = trace_half(spec, p0, d0, cfg, true);
  lt.forward = fwd.verdict;
  lt.steps = fwd.steps;
  lt.rejected = fwd.rejected;
  lt.min_eigen_gap = fwd.min_gap;
  if (fwd.verdict == Verdict::Closed) {
    lt.verdict = Verdict::Closed;
    lt.return_gap = fwd.return_gap;
    lt.points = std::move(fwd.pts);
    lt.s = std::move(fwd.s);
    lt.arclength = lt.s.back();
    return lt;
  }
  Half bwd = trace_half(spec, p0, Vec(-d0), cfg, false);
  lt.backward = bwd.verdict;
  lt.steps += bwd.steps;
  lt.rejected += bwd.rejected;
  lt.min_eigen_gap = std::min(lt.min_eigen_gap, bwd.min_gap);
  for (size_t j = bwd.pts.size(); j-- > 1;) {
    lt.points.push_back(bwd.pts[j]);
    lt.s.push_back(-bwd.s[j]);
  }
  lt.points.insert(lt.points.end(), fwd.pts.begin(), fwd.pts.end());
  lt.s.insert(lt.s.end(), fwd.s.begin(), fwd.s.end());
  lt.arclength = fwd.s.back() + bwd.s.back();

  auto rank = [](Verdict v) {
    switch (v) {
      case Verdict::StepFailure: return 4;
      case Verdict::UmbilicApproach: return 3;
      case Verdict::LengthLimit: return 2;
      case Verdict::Escaped: return 1;
      default: return 0;
    }
  };
  lt.verdict = rank(fwd.verdict) >= rank(bwd.verdict) ? fwd.verdict : bwd.verdict;
  return lt;
}

int CensusReport::count(Verdict v) const { return static_cast<int>(std::count(verdicts.begin(), verdicts.end(), v)); }

double CensusReport::fraction(Verdict v) const {
  return verdicts.empty() ? 0.0 : static_cast<double>(count(v)) / verdicts.size();
}

double CensusReport::max_return_gap() const {
  double m = 0.0;
  for (size_t j = 0; j < verdicts.size(); ++j)
    if (verdicts[j] == Verdict::Closed) m = std::max(m, return_gaps[j]);
  return m;
}

CensusReport leaf_census(const QuadricSpec& spec, std::span<const Vec> seeds, const TraceConfig& cfg, Exec exec) {
  cfg.validate(spec);
  const int n = static_cast<int>(seeds.size());
  CensusReport r;
  r.verdicts.assign(n, Verdict::StepFailure);
  r.return_gaps.assign(n, -1.0);
  r.arclengths.assign(n, 0.0);
  r.min_gaps.assign(n, 0.0);
  auto job = [&](int j) {
    try {
      const LeafTrace lt = trace_leaf(spec, seeds[j], cfg);
      r.verdicts[j] = lt.verdict;
      r.return_gaps[j] = lt.return_gap;
      r.arclengths[j] = lt.arclength;
      r.min_gaps[j] = lt.min_eigen_gap;
    } catch (const DegenerateDirectionError& e) {
      r.verdicts[j] = Verdict::UmbilicApproach;
      r.min_gaps[j] = e.gap();
    } catch (const Error&) {
      r.verdicts[j] = Verdict::StepFailure;
    }
  };
  if (exec == Exec::Serial) {
    for (int j = 0; j < n; ++j) job(j);
  } else {
#pragma omp parallel for schedule(dynamic, 1) num_threads(thread_count())
    for (int j = 0; j < n; ++j) job(j);
  }
  return r;
}

}  // namespace qpc
