#pragma once

#include <string>
#include <vector>

namespace mlosc {

// shortest round-trip decimal representation ('.' radix, no locale)
std::string fmt_double(double v);

struct CsvWriter {
  std::string text;
  explicit CsvWriter(const std::vector<std::string>& header);
  void row(const std::vector<double>& values);
};

void write_text_file(const std::string& path, const std::string& content);

}  // namespace mlosc
