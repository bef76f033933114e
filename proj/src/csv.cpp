#include "semtrade/csv.hpp"

#include <charconv>

namespace semtrade {

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

CsvWriter::CsvWriter(const std::string& path, std::string_view schema)
    : out_(path, std::ios::binary), path_(path) {
  if (!out_) throw IoError("cannot open for writing: " + path);
  out_ << "# schema: " << schema << "\n";
}

CsvWriter::~CsvWriter() = default;

void CsvWriter::begin_row() {
  row_started_ = true;
  first_field_ = true;
}

void CsvWriter::field(std::string_view text) {
  if (!first_field_) out_ << ',';
  out_ << text;
  first_field_ = false;
}

void CsvWriter::field(double value) { field(std::string_view(format_double(value))); }

void CsvWriter::field(long value) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  field(std::string_view(buf, static_cast<size_t>(ptr - buf)));
}

void CsvWriter::end_row() {
  out_ << '\n';
  row_started_ = false;
  if (!out_) throw IoError("write failed: " + path_);
}

}  // namespace semtrade
