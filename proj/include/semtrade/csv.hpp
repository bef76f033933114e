#pragma once

#include <fstream>
#include <string>
#include <string_view>

#include "semtrade/common.hpp"

namespace semtrade {

// Shortest round-trip decimal rendering, identical on every run.
std::string format_double(double value);

// CSV output with a versioned schema comment as the first line. No
// timestamps ever appear here; run metadata lives in the manifest.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, std::string_view schema);
  ~CsvWriter();

  void begin_row();
  void field(std::string_view text);
  void field(double value);
  void field(long value);
  void field(int value) { field(static_cast<long>(value)); }
  void end_row();

  template <typename... Fields>
  void row(const Fields&... fields) {
    begin_row();
    (field(fields), ...);
    end_row();
  }

 private:
  std::ofstream out_;
  std::string path_;
  bool row_started_ = false;
  bool first_field_ = true;
};

}  // namespace semtrade
