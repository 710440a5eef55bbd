#include "qpc/errors.hpp"
#include "qpc/io.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace qpc;

namespace {
std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}
}  // namespace

TEST_CASE("float formatting") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(-0.0) == "0");
  CHECK(format_double(2.0) == "2");
  CHECK(format_double(1e-300) == "1e-300");
  CHECK(format_double(1.0 + 1e-15) == "1.0000000000000011");
  CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("csv writer") {
  CsvWriter w({"a", "b", "c"});
  w.cell(1).cell(0.5).cell("x,y");
  w.end_row();
  CHECK(w.str() == "a,b,c\n1,0.5,\"x,y\"\n");
  CHECK(w.rows() == 1);
  CHECK_THROWS_AS(w.cell(1).end_row(), InternalError);
  CsvWriter v({"a"});
  v.cell(1);
  CHECK_THROWS_AS(v.cell(2), InternalError);
}

TEST_CASE("atomic write and manifest") {
  const auto dir = std::filesystem::temp_directory_path() / "qpc_test_io";
  std::filesystem::create_directories(dir);
  const auto p = dir / "out.csv";
  write_file_atomic(p, "one\n");
  write_file_atomic(p, "two\n");
  CHECK(slurp(p) == "two\n");
  CHECK(!std::filesystem::exists(dir / "out.csv.tmp"));
  CHECK_THROWS_AS(write_file_atomic(dir / "missing" / "x.csv", "z"), Error);

  RunManifest m;
  m.command = "umbilic";
  m.family = "Q2";
  m.squares = {4, 3, 2, 1};
  m.seed = 42;
  m.outputs = {"x.csv"};
  const auto j = m.to_json();
  CHECK(j["command"] == "umbilic");
  CHECK(j["tool_version"] == std::string(kToolVersion));
  m.save(dir / "m.json");
  const std::string text = slurp(dir / "m.json");
  CHECK(text.back() == '\n');
  CHECK(text.find('\r') == std::string::npos);
  CHECK(nlohmann::json::parse(text)["semiaxes_squared"].size() == 4);
  std::filesystem::remove_all(dir);
}
