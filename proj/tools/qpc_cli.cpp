// qpc: principal curvature tools for quadrics in R3 and R4.
#include "qpc/confocal.hpp"
#include "qpc/errors.hpp"
#include "qpc/io.hpp"
#include "qpc/r3.hpp"
#include "qpc/tracer.hpp"
#include "qpc/umbilic_locus.hpp"
#include "qpc/validation.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>

using namespace qpc;
using json = nlohmann::ordered_json;

namespace {

// Exit statuses.
constexpr int kOk = 0;
constexpr int kBadInput = 1;  // invalid spec, unknown suite, failed validation
constexpr int kBadPoint = 2;  // off-surface or degenerate start

struct UsageError : Error {
  using Error::Error;
};
struct PointError : Error {
  using Error::Error;
};

std::vector<double> parse_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(std::string("cannot parse ") + what + " '" + text + "'");
    }
  }
  return out;
}

struct SpecArgs {
  std::string family;
  std::string squares;
  std::string semiaxes;

  void add(CLI::App* app) {
    app->add_option("--family", family, "Q0 Q1 Q2 Q3 q0 q1 q2")->required();
    auto* a = app->add_option("--semiaxes2", squares, "squared semiaxes, comma separated");
    auto* b = app->add_option("--semiaxes", semiaxes, "semiaxes (squared internally)");
    a->excludes(b);
  }

  QuadricSpec build(std::vector<double>* sq_out = nullptr) const {
    const auto f = parse_family(family);
    if (!f) throw UsageError("unknown family '" + family + "'");
    std::vector<double> sq;
    if (!squares.empty()) {
      sq = parse_list(squares, "--semiaxes2");
    } else if (!semiaxes.empty()) {
      for (double a : parse_list(semiaxes, "--semiaxes")) sq.push_back(a * a);
    } else {
      throw UsageError("one of --semiaxes2 / --semiaxes is required");
    }
    QuadricSpec s = QuadricSpec::from_squares(*f, sq);
    if (sq_out) *sq_out = std::vector<double>(s.squares().begin(), s.squares().end());
    return s;
  }
};

Vec parse_point(const QuadricSpec& s, const std::string& text) {
  const auto v = parse_list(text, "point");
  if (static_cast<int>(v.size()) != s.dim())
    throw UsageError("point needs " + std::to_string(s.dim()) + " coordinates, got " + std::to_string(v.size()));
  Vec p(s.dim());
  for (int i = 0; i < s.dim(); ++i) p[i] = v[i];
  return p;
}

json vec_json(const Eigen::Ref<const Eigen::VectorXd>& v) {
  json j = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) j.push_back(v[i]);
  return j;
}

std::string manifest_path(const std::string& out) { return out + ".manifest.json"; }

RunManifest manifest(std::string command, const QuadricSpec& s, const std::vector<double>& sq) {
  RunManifest m;
  m.command = std::move(command);
  m.family = std::string(family_name(s.family()));
  m.squares = sq;
  return m;
}

void print_json(const json& j) { std::cout << dump_json(j); }

// --- curvature ---------------------------------------------------------------

int cmd_curvature(const SpecArgs& sa, const std::string& point_text, double tol) {
  const QuadricSpec s = sa.build();
  const Vec p = parse_point(s, point_text);
  const double t = tol > 0 ? tol : s.surface_tolerance();
  const double res = evaluate(s, p);
  if (!(std::abs(res) <= t)) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "point is off the surface: residual %.3e exceeds %.3e", res, t);
    throw PointError(buf);
  }
  const PrincipalData pd = principal_data(s, p);
  json j;
  j["family"] = std::string(family_name(s.family()));
  j["point"] = vec_json(p);
  j["residual"] = pd.residual;
  j["curvatures"] = vec_json(pd.curvatures);
  j["gaps"] = vec_json(pd.gaps);
  json dirs = json::array();
  for (int k = 0; k < pd.count(); ++k) dirs.push_back(vec_json(pd.directions.col(k)));
  j["directions"] = dirs;
  j["normal"] = vec_json(pd.normal);
  print_json(j);
  return kOk;
}

// --- umbilic -------------------------------------------------------------------

int cmd_umbilic(const SpecArgs& sa, int n, const std::string& out) {
  std::vector<double> sq;
  const QuadricSpec s = sa.build(&sq);
  if (!is_r4(s.family()))
    throw UsageError("umbilic handles the R4 families; use umbilic3 for " + std::string(family_name(s.family())));
  if (n < 2) throw UsageError("--n must be at least 2");
  CsvWriter csv({"curve_id", "kind", "s", "x", "y", "z", "t", "k1", "k2", "k3", "gap12", "gap23", "torsion"});
  const auto curves = partially_umbilic_locus(s);
  for (std::size_t id = 0; id < curves.size(); ++id) {
    LocusCurve lc(s, curves[id]);
    for (const LocusSample& ls : sample_locus(lc, n)) {
      csv.cell(static_cast<int>(id)).cell(coincidence_name(curves[id].kind)).cell(ls.s);
      for (int i = 0; i < 4; ++i) csv.cell(ls.point.coords[i]);
      for (int i = 0; i < 3; ++i) csv.cell(ls.principal.curvatures[i]);
      csv.cell(ls.principal.gaps[0]).cell(ls.principal.gaps[1]).cell(ls.torsion);
      csv.end_row();
    }
  }
  csv.save(out);
  RunManifest m = manifest("umbilic", s, sq);
  m.tolerances = {{"samples_per_curve", n}, {"arc_truncation_radius", 5.0 * s.scale()}};
  m.outputs = {out};
  m.save(manifest_path(out));
  std::cerr << curves.size() << " curves, " << csv.rows() << " rows -> " << out << "\n";
  return kOk;
}

int cmd_umbilic3(const SpecArgs& sa, const std::string& out) {
  std::vector<double> sq;
  const QuadricSpec s = sa.build(&sq);
  if (is_r4(s.family())) throw UsageError("umbilic3 handles q0 q1 q2; use umbilic for R4 families");
  CsvWriter csv({"id", "x", "y", "z", "k1", "k2", "gap"});
  const auto ums = r3_umbilics(s);
  for (std::size_t id = 0; id < ums.size(); ++id) {
    const PrincipalData pd = principal_data(s, ums[id]);
    csv.cell(static_cast<int>(id));
    for (int i = 0; i < 3; ++i) csv.cell(ums[id][i]);
    csv.cell(pd.curvatures[0]).cell(pd.curvatures[1]).cell(pd.gaps[0]);
    csv.end_row();
  }
  csv.save(out);
  RunManifest m = manifest("umbilic3", s, sq);
  m.outputs = {out};
  m.save(manifest_path(out));
  std::cerr << ums.size() << " umbilics -> " << out << "\n";
  return kOk;
}

// --- principal net ---------------------------------------------------------------

// Coordinate lines of the principal chart: for each slot k, `lines` curves with
// the other slots held at interior values, `n` points each, in one orthant.
int cmd_net(const SpecArgs& sa, int lines, int n, const std::string& out) {
  std::vector<double> sq;
  const QuadricSpec s = sa.build(&sq);
  if (lines < 1 || n < 2) throw UsageError("--lines >= 1 and --n >= 2 required");
  const ChartLayout lay = chart_layout(s);
  const int dim = s.dim();
  std::vector<std::string> head{"line_id", "slot", "param"};
  for (int i = 0; i < dim; ++i) head.push_back(std::string(1, "xyzt"[i]));
  CsvWriter csv(head);
  // interior angles avoid the chart boundary, where slots coincide with poles
  auto angle = [&](const Interval& iv, double f) {
    return iv.bounded() ? 0.5 * std::acos(-1.0) * f : 2.0 * f;
  };
  int id = 0;
  for (int k = 0; k < lay.slots; ++k) {
    for (int l = 0; l < lines; ++l) {
      double th[kMaxSlots] = {0, 0, 0};
      const double f = (l + 1.0) / (lines + 1.0);
      for (int j = 0; j < lay.slots; ++j) th[j] = angle(lay.iv[j], j == k ? 0.5 : f);
      for (int q = 0; q < n; ++q) {
        th[k] = angle(lay.iv[k], 0.02 + 0.96 * q / (n - 1));
        double x[kMaxDim];
        point_from_angles(s, lay, th, Orthant{1, 1, 1, 1}, x);
        csv.cell(id).cell(static_cast<int>(k) + 1).cell(th[k]);
        for (int i = 0; i < dim; ++i) csv.cell(x[i]);
        csv.end_row();
      }
      ++id;
    }
  }
  csv.save(out);
  RunManifest m = manifest("net", s, sq);
  m.tolerances = {{"lines_per_slot", lines}, {"points_per_line", n}};
  m.outputs = {out};
  m.save(manifest_path(out));
  return kOk;
}

// --- trace ---------------------------------------------------------------------

struct TraceFlags {
  int foliation = 1;
  std::string start;
  std::optional<double> h0, max_step, min_step, gap_stop, escape_radius, max_length, close_tol, rk_tol;
};

int cmd_trace(const SpecArgs& sa, const TraceFlags& fl, const std::string& out) {
  std::vector<double> sq;
  const QuadricSpec s = sa.build(&sq);
  TraceConfig cfg = TraceConfig::defaults(s, fl.foliation);
  if (fl.h0) cfg.h0 = *fl.h0;
  if (fl.max_step) cfg.max_step = *fl.max_step;
  if (fl.min_step) cfg.min_step = *fl.min_step;
  if (fl.gap_stop) cfg.gap_stop = *fl.gap_stop;
  if (fl.escape_radius) cfg.escape_radius = *fl.escape_radius;
  if (fl.max_length) cfg.max_length = *fl.max_length;
  if (fl.close_tol) cfg.close_tol = *fl.close_tol;
  if (fl.rk_tol) cfg.rk_tol = *fl.rk_tol;
  cfg.validate(s);

  Vec p = parse_point(s, fl.start);
  constexpr double start_tol = 1e-6;
  const double res = evaluate(s, p);
  if (!(std::abs(res) <= start_tol)) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "start is off the surface: residual %.3e exceeds %.1e", res, start_tol);
    throw PointError(buf);
  }
  p = project_to_surface(s, p, cfg.projection_tol);

  LeafTrace lt;
  try {
    lt = trace_leaf(s, p, cfg);
  } catch (const DegenerateDirectionError& e) {
    throw PointError(std::string("degenerate start: ") + e.what());
  }

  std::vector<std::string> head{"s", "x", "y", "z"};
  if (s.dim() == 4) head.push_back("t");
  CsvWriter csv(head);
  for (std::size_t j = 0; j < lt.points.size(); ++j) {
    csv.cell(lt.s[j]);
    for (int i = 0; i < s.dim(); ++i) csv.cell(lt.points[j][i]);
    csv.end_row();
  }
  csv.save(out);

  json v;
  v["verdict"] = std::string(verdict_name(lt.verdict));
  v["forward"] = std::string(verdict_name(lt.forward));
  v["backward"] = lt.verdict == Verdict::Closed ? json(nullptr) : json(std::string(verdict_name(lt.backward)));
  v["foliation"] = lt.foliation;
  v["arclength"] = lt.arclength;
  v["return_gap"] = lt.return_gap >= 0 ? json(lt.return_gap) : json(nullptr);
  v["min_eigen_gap"] = lt.min_eigen_gap;
  v["points"] = static_cast<int>(lt.points.size());
  v["steps"] = lt.steps;
  v["rejected"] = lt.rejected;
  const std::string vpath = out + ".verdict.json";
  write_file_atomic(vpath, dump_json(v));

  RunManifest m = manifest("trace", s, sq);
  m.tolerances = {{"foliation", cfg.foliation},     {"start", vec_json(p)},
                  {"h0", cfg.h0},                   {"min_step", cfg.min_step},
                  {"max_step", cfg.max_step},       {"projection_tol", cfg.projection_tol},
                  {"gap_stop", cfg.gap_stop},       {"escape_radius", cfg.escape_radius},
                  {"max_length", cfg.max_length},   {"close_tol", cfg.close_tol},
                  {"rk_tol", cfg.rk_tol}};
  m.outputs = {out, vpath};
  m.save(manifest_path(out));
  std::cerr << verdict_name(lt.verdict) << ", " << lt.points.size() << " points -> " << out << "\n";
  return kOk;
}

// --- validate --------------------------------------------------------------------

int cmd_validate(const std::string& suite, std::uint64_t seed, const std::string& out) {
  if (!is_suite(suite)) {
    std::string names;
    for (const auto& n : suite_names()) names += " " + n;
    throw UsageError("unknown suite '" + suite + "' (expected one of:" + names + ")");
  }
  const SuiteReport rep = run_suite(suite, seed);
  const json j = rep.to_json();
  print_json(j);
  if (!out.empty()) {
    write_file_atomic(out, dump_json(j));
    RunManifest m;
    m.command = "validate";
    m.seed = seed;
    m.tolerances = {{"suite", suite}};
    m.outputs = {out};
    m.save(manifest_path(out));
  }
  for (const auto& c : rep.criteria) std::cerr << (c.pass ? "PASS " : "FAIL ") << c.name << ": " << c.detail << "\n";
  return rep.pass() ? kOk : kBadInput;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Principal curvatures, partially umbilic loci and principal foliations of quadrics"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  SpecArgs sa;
  std::string point, out, suite = "all";
  double tol = -1;
  int n = 100, lines = 8;
  std::uint64_t seed = 42;
  TraceFlags fl;

  auto* curv = app.add_subcommand("curvature", "principal data at a surface point (JSON)");
  sa.add(curv);
  curv->add_option("--point", point, "comma separated coordinates")->required();
  curv->add_option("--tol", tol, "surface residual tolerance");

  auto* umb = app.add_subcommand("umbilic", "partially umbilic curves of an R4 quadric (CSV)");
  sa.add(umb);
  umb->add_option("--n", n, "samples per curve");
  umb->add_option("--out", out, "CSV path")->required();

  auto* umb3 = app.add_subcommand("umbilic3", "umbilic points of an R3 quadric (CSV)");
  sa.add(umb3);
  umb3->add_option("--out", out, "CSV path")->required();

  auto* net = app.add_subcommand("net", "coordinate lines of the principal chart (CSV)");
  sa.add(net);
  net->add_option("--lines", lines, "lines per slot");
  net->add_option("--n", n, "points per line");
  net->add_option("--out", out, "CSV path")->required();

  auto* tr = app.add_subcommand("trace", "trace one principal line (CSV + verdict JSON)");
  sa.add(tr);
  tr->add_option("--foliation", fl.foliation, "1-based index of the sorted curvature")->required();
  tr->add_option("--start", fl.start, "start point, comma separated")->required();
  tr->add_option("--out", out, "CSV path")->required();
  tr->add_option("--h0", fl.h0);
  tr->add_option("--max-step", fl.max_step);
  tr->add_option("--min-step", fl.min_step);
  tr->add_option("--gap-stop", fl.gap_stop);
  tr->add_option("--escape-radius", fl.escape_radius);
  tr->add_option("--max-length", fl.max_length);
  tr->add_option("--close-tol", fl.close_tol);
  tr->add_option("--rk-tol", fl.rk_tol);

  auto* val = app.add_subcommand("validate", "run acceptance suites (JSON summary)");
  val->add_option("--suite", suite, "oracle roundtrip locus census torsion r3 all");
  val->add_option("--seed", seed);
  val->add_option("--out", out, "also write the summary here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kBadInput;
  }

  try {
    if (*curv) return cmd_curvature(sa, point, tol);
    if (*umb) return cmd_umbilic(sa, n, out);
    if (*umb3) return cmd_umbilic3(sa, out);
    if (*net) return cmd_net(sa, lines, n, out);
    if (*tr) return cmd_trace(sa, fl, out);
    if (*val) return cmd_validate(suite, seed, out);
  } catch (const PointError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadPoint;
  } catch (const NumericalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadPoint;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  }
  return kBadInput;
}
