#pragma once

#include <nlohmann/json.hpp>

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace qpc {

inline constexpr std::string_view kToolVersion = "0.3.0";

// Writes `content` to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

// CSV with one header row, LF line endings and 17 significant digits.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);

  CsvWriter& cell(double x);
  CsvWriter& cell(long long x);
  CsvWriter& cell(int x) { return cell(static_cast<long long>(x)); }
  CsvWriter& cell(std::string_view s);
  void end_row();

  const std::string& str() const { return buf_; }
  int rows() const { return rows_; }
  void save(const std::filesystem::path& path) const { write_file_atomic(path, buf_); }

 private:
  void sep();

  std::size_t columns_;
  std::size_t col_ = 0;
  int rows_ = 0;
  std::string buf_;
};

std::string format_double(double x);

struct RunManifest {
  std::string command;
  std::string family;
  std::vector<double> squares;
  unsigned long long seed = 0;
  nlohmann::ordered_json tolerances = nlohmann::ordered_json::object();
  std::vector<std::string> outputs;
  std::string tool_version{kToolVersion};

  nlohmann::ordered_json to_json() const;
  void save(const std::filesystem::path& path) const;
};

// Deterministic JSON text (2-space indent, trailing LF).
std::string dump_json(const nlohmann::ordered_json& j);

}  // namespace qpc
