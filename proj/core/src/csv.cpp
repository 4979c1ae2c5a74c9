#include "roughburgers/csv.hpp"

#include <cstdio>
#include <fstream>

#include "roughburgers/errors.hpp"

namespace rough {

CsvWriter::CsvWriter(std::string path, std::vector<std::string> columns)
    : path_(std::move(path)), columns_(std::move(columns)) {}

void CsvWriter::meta(const std::string& key, const std::string& value) {
  meta_.emplace_back(key, value);
}

void CsvWriter::row(const std::vector<double>& values) {
  if (values.size() != columns_.size()) throw InvalidInput("CsvWriter: column count mismatch");
  rows_.push_back(values);
}

std::string CsvWriter::format(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string CsvWriter::flush() {
  if (flushed_) return path_;
  std::ofstream out(path_, std::ios::binary);
  if (!out) throw ConfigError("CsvWriter: cannot open " + path_);
  for (const auto& [k, v] : meta_) out << "# " << k << " " << v << "\n";
  for (std::size_t c = 0; c < columns_.size(); ++c)
    out << columns_[c] << (c + 1 < columns_.size() ? "," : "");
  out << "\n";
  for (const auto& r : rows_) {
    for (std::size_t c = 0; c < r.size(); ++c)
      out << format(r[c]) << (c + 1 < r.size() ? "," : "");
    out << "\n";
  }
  flushed_ = true;
  return path_;
}

}  // namespace rough
