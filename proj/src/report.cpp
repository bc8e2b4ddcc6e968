#include "collapse/report.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

namespace collapse {

std::string full_precision(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string rounded(double x) {
  if (!std::isfinite(x)) return full_precision(x);
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 6);
  return std::string(buf, res.ptr);
}

std::string digest(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void CsvWriter::comment(std::string_view line) { os_ << "# " << line << '\n'; }

void CsvWriter::header(std::initializer_list<std::string_view> columns) {
  bool first = true;
  for (auto c : columns) {
    if (!first) os_ << ',';
    os_ << c;
    first = false;
  }
  os_ << '\n';
}

void CsvWriter::header(const std::vector<std::string>& columns) {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) os_ << ',';
    os_ << columns[i];
  }
  os_ << '\n';
}

void CsvWriter::separator() {
  if (row_started_) os_ << ',';
  row_started_ = true;
}

CsvWriter& CsvWriter::cell(double x) {
  separator();
  os_ << full_precision(x);
  return *this;
}

CsvWriter& CsvWriter::cell(std::string_view text) {
  separator();
  os_ << text;
  return *this;
}

CsvWriter& CsvWriter::cell(bool flag) {
  separator();
  os_ << (flag ? "true" : "false");
  return *this;
}

void CsvWriter::end_row() {
  os_ << '\n';
  row_started_ = false;
}

}  // namespace collapse
