#include "qpc/io.hpp"

#include "qpc/errors.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace qpc {

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      out.close();
      std::filesystem::remove(tmp);
      throw Error("write failed: " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw Error("rename to " + path.string() + " failed: " + ec.message());
  }
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) x = 0.0;  // no "-0"
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

CsvWriter::CsvWriter(std::vector<std::string> header) : columns_(header.size()) {
  for (const auto& h : header) cell(h);
  end_row();
  rows_ = 0;
}

void CsvWriter::sep() {
  if (col_ >= columns_) throw InternalError("csv row has too many cells");
  if (col_ > 0) buf_ += ',';
  ++col_;
}

CsvWriter& CsvWriter::cell(double x) {
  sep();
  buf_ += format_double(x);
  return *this;
}

CsvWriter& CsvWriter::cell(long long x) {
  sep();
  buf_ += std::to_string(x);
  return *this;
}

CsvWriter& CsvWriter::cell(std::string_view s) {
  sep();
  if (s.find_first_of(",\"\n") == std::string_view::npos) {
    buf_ += s;
    return *this;
  }
  buf_ += '"';
  for (char ch : s) {
    if (ch == '"') buf_ += '"';
    buf_ += ch;
  }
  buf_ += '"';
  return *this;
}

void CsvWriter::end_row() {
  if (col_ != columns_) throw InternalError("csv row has too few cells");
  buf_ += '\n';
  col_ = 0;
  ++rows_;
}

std::string dump_json(const nlohmann::ordered_json& j) { return j.dump(2) + "\n"; }

nlohmann::ordered_json RunManifest::to_json() const {
  nlohmann::ordered_json j;
  j["command"] = command;
  j["family"] = family;
  j["semiaxes_squared"] = squares;
  j["seed"] = seed;
  j["tolerances"] = tolerances;
  j["outputs"] = outputs;
  j["tool_version"] = tool_version;
  return j;
}

void RunManifest::save(const std::filesystem::path& path) const { write_file_atomic(path, dump_json(to_json())); }

}  // namespace qpc
