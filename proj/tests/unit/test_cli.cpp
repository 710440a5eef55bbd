#include <doctest.h>
#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

namespace fs = std::filesystem;

namespace {

const fs::path& workdir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("qpc_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Run {
  int status;
  std::string out, err;
};

Run qpc(const std::string& args) {
  const fs::path o = workdir() / "stdout.txt", e = workdir() / "stderr.txt";
  const std::string cmd = std::string(QPC_BIN) + " " + args + " >" + o.string() + " 2>" + e.string();
  const int raw = std::system(cmd.c_str());
  return {WIFEXITED(raw) ? WEXITSTATUS(raw) : -1, slurp(o), slurp(e)};
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p) {
  std::vector<std::vector<std::string>> rows;
  std::ifstream in(p);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string c;
    while (std::getline(ss, c, ',')) cells.push_back(c);
    rows.push_back(cells);
  }
  return rows;
}

std::string path(const char* name) { return (workdir() / name).string(); }

// A chart-interior point of Q2 with squares (4,3,2,1): (u, v, w) = (2.5, 1.5, -3.5).
const char* kQ2Start = "1.5438048235879214,1.3624426593438712,0.30276503540974914,0.41079191812887461";

}  // namespace

TEST_CASE("curvature") {
  Run r = qpc("curvature --family Q1 --semiaxes2 4,3,2,1 --point 2,0,0,0");
  REQUIRE(r.status == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["curvatures"][0].get<double>() == doctest::Approx(-2.0));
  CHECK(j["curvatures"][1].get<double>() == doctest::Approx(2.0 / 3.0));
  CHECK(j["curvatures"][2].get<double>() == doctest::Approx(1.0));
  CHECK(j["directions"].size() == 3);
  // the same quadric through plain semiaxes
  Run r2 = qpc("curvature --family Q1 --semiaxes 2,1.7320508075688772,1.4142135623730951,1 --point 2,0,0,0");
  REQUIRE(r2.status == 0);
  CHECK(nlohmann::json::parse(r2.out)["curvatures"][0].get<double>() == doctest::Approx(-2.0));

  CHECK(qpc("curvature --family Q1 --semiaxes2 4,3,2,1 --point 2,0.1,0,0").status == 2);
  Run bad = qpc("curvature --family Q0 --semiaxes2 4,3,3,1 --point 2,0,0,0");
  CHECK(bad.status == 1);
  CHECK(bad.err.find("b>c violated") != std::string::npos);
  CHECK(qpc("curvature --family Q1 --semiaxes2 4,3,2,1 --point 2,0,0").status == 1);
  CHECK(qpc("curvature --family Q9 --semiaxes2 4,3,2,1 --point 2,0,0,0").status == 1);
  CHECK(qpc("curvature --family Q1 --point 2,0,0,0").status == 1);
}

TEST_CASE("umbilic export") {
  auto ids = [](const std::vector<std::vector<std::string>>& rows) {
    std::set<std::string> s;
    for (size_t i = 1; i < rows.size(); ++i) s.insert(rows[i][0]);
    return s;
  };
  REQUIRE(qpc("umbilic --family Q0 --semiaxes2 4,3,2,1 --n 20 --out " + path("q0.csv")).status == 0);
  auto q0 = read_csv(path("q0.csv"));
  CHECK(ids(q0).size() == 4);
  CHECK(fs::exists(path("q0.csv.manifest.json")));

  REQUIRE(qpc("umbilic --family Q2 --semiaxes2 4,3,2,1 --n 100 --out " + path("q2.csv")).status == 0);
  auto q2 = read_csv(path("q2.csv"));
  CHECK(q2.size() == 201);
  CHECK(ids(q2).size() == 2);
  const std::vector<std::string> head{"curve_id", "kind", "s",  "x",  "y",     "z",     "t",
                                      "k1",       "k2",   "k3", "gap12", "gap23", "torsion"};
  CHECK(q2[0] == head);
  for (size_t i = 1; i < q2.size(); ++i) {
    REQUIRE(q2[i].size() == head.size());
    CHECK(q2[i][1] == "P23");
    CHECK(std::abs(std::stod(q2[i][11])) < 1e-8);
  }
  const std::string text = slurp(path("q2.csv"));
  CHECK(text.find('\r') == std::string::npos);
  CHECK(text.back() == '\n');

  REQUIRE(qpc("umbilic --family Q1 --semiaxes2 4,3,2,1 --n 21 --out " + path("q1.csv")).status == 0);
  auto q1 = read_csv(path("q1.csv"));
  CHECK(ids(q1).size() == 4);
  // open arcs: arclength runs symmetrically through 0
  double lo = 0, hi = 0;
  for (size_t i = 1; i < q1.size(); ++i) {
    lo = std::min(lo, std::stod(q1[i][2]));
    hi = std::max(hi, std::stod(q1[i][2]));
  }
  CHECK(lo < 0);
  CHECK(hi == doctest::Approx(-lo));

  Run r3 = qpc("umbilic --family q0 --semiaxes2 4,3,1 --out " + path("bad.csv"));
  CHECK(r3.status == 1);
  CHECK(r3.err.find("umbilic3") != std::string::npos);
  REQUIRE(qpc("umbilic3 --family q0 --semiaxes2 4,3,1 --out " + path("u3.csv")).status == 0);
  CHECK(read_csv(path("u3.csv")).size() == 5);
  REQUIRE(qpc("umbilic3 --family q1 --semiaxes2 4,3,1 --out " + path("u3q1.csv")).status == 0);
  CHECK(read_csv(path("u3q1.csv")).size() == 1);
}

TEST_CASE("trace") {
  const std::string base = "trace --family Q2 --semiaxes2 4,3,2,1 ";
  REQUIRE(qpc(base + "--foliation 1 --start " + kQ2Start + " --out " + path("t.csv")).status == 0);
  auto v = nlohmann::json::parse(slurp(path("t.csv.verdict.json")));
  CHECK(v["verdict"] == "Closed");
  CHECK(v["return_gap"].get<double>() < 1e-6);
  auto rows = read_csv(path("t.csv"));
  CHECK(rows[0] == std::vector<std::string>{"s", "x", "y", "z", "t"});
  CHECK(rows.size() == v["points"].get<size_t>() + 1);
  auto m = nlohmann::json::parse(slurp(path("t.csv.manifest.json")));
  CHECK(m["command"] == "trace");
  CHECK(m["outputs"].size() == 2);

  REQUIRE(qpc(base + "--foliation 2 --start " + kQ2Start + " --out " + path("t2.csv")).status == 0);
  CHECK(nlohmann::json::parse(slurp(path("t2.csv.verdict.json")))["verdict"] == "Escaped");
  REQUIRE(qpc("trace --family Q1 --semiaxes2 4,3,2,1 --foliation 1 --start 2,0,0,0 --out " + path("t3.csv")).status ==
          0);
  CHECK(nlohmann::json::parse(slurp(path("t3.csv.verdict.json")))["verdict"] == "Escaped");

  // R3 trace: no t column
  REQUIRE(qpc("trace --family q0 --semiaxes2 4,3,1 --foliation 1 --start 1,1.5,0 --out " +
              path("t4.csv"))
              .status == 0);
  CHECK(read_csv(path("t4.csv"))[0] == std::vector<std::string>{"s", "x", "y", "z"});

  // near the surface: projected; far: rejected
  CHECK(qpc(base + "--foliation 1 --start 1.5438048235879,1.3624426593438712,0.30276503540974914,"
                   "0.41079191812887461 --out " + path("t5.csv"))
            .status == 0);
  CHECK(qpc(base + "--foliation 1 --start 1,1,1,1 --out " + path("t6.csv")).status == 2);
  CHECK(!fs::exists(path("t6.csv")));

  // a locus sample as the start
  REQUIRE(qpc("umbilic --family Q2 --semiaxes2 4,3,2,1 --n 10 --out " + path("l.csv")).status == 0);
  auto l = read_csv(path("l.csv"));
  const std::string p = l[3][3] + "," + l[3][4] + "," + l[3][5] + "," + l[3][6];
  Run d = qpc(base + "--foliation 3 --start " + p + " --out " + path("t7.csv"));
  CHECK(d.status == 2);
  CHECK(d.err.find("degenerate") != std::string::npos);
  CHECK(qpc(base + "--foliation 1 --start " + p + " --out " + path("t8.csv")).status == 0);

  CHECK(qpc(base + "--foliation 4 --start " + kQ2Start + " --out " + path("t9.csv")).status == 1);
}

TEST_CASE("byte determinism") {
  for (int k = 0; k < 2; ++k) {
    const std::string tag = std::to_string(k);
    REQUIRE(qpc("umbilic --family Q3 --semiaxes2 4,3,2,1 --n 50 --out " + path(("d" + tag + ".csv").c_str())).status == 0);
    REQUIRE(qpc(std::string("trace --family Q2 --semiaxes2 4,3,2,1 --foliation 1 --start ") + kQ2Start + " --out " +
                path(("e" + tag + ".csv").c_str()))
                .status == 0);
  }
  CHECK(slurp(path("d0.csv")) == slurp(path("d1.csv")));
  CHECK(slurp(path("e0.csv")) == slurp(path("e1.csv")));
  CHECK(slurp(path("e0.csv.verdict.json")) == slurp(path("e1.csv.verdict.json")));
}

TEST_CASE("validate") {
  Run r = qpc("validate --suite roundtrip --seed 42");
  CHECK(r.status == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["pass"] == true);
  CHECK(j["criteria"][0]["metrics"]["Q1"]["max_err"].get<double>() < 1e-9);
  Run bad = qpc("validate --suite nonsense");
  CHECK(bad.status == 1);
  CHECK(bad.err.find("unknown suite") != std::string::npos);
}

TEST_CASE("cleanup") { fs::remove_all(workdir()); }
