#pragma once

#include <string>
#include <vector>

namespace rough {

/// CSV writer with '#'-prefixed header metadata, fixed 17-significant-digit
/// numeric formatting (so identical values produce identical bytes), UTF-8.
class CsvWriter {
 public:
  CsvWriter(std::string path, std::vector<std::string> columns);

  void meta(const std::string& key, const std::string& value);
  void row(const std::vector<double>& values);
  /// Writes the file; returns the path.
  std::string flush();

  static std::string format(double v);

 private:
  std::string path_;
  std::vector<std::string> columns_;
  std::vector<std::pair<std::string, std::string>> meta_;
  std::vector<std::vector<double>> rows_;
  bool flushed_ = false;
};

}  // namespace rough
