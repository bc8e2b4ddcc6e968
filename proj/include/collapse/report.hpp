#pragma once

#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace collapse {

// Shortest text of at least 17 significant digits; "inf"/"-inf"/"nan" for
// non-finite values.
std::string full_precision(double x);

// Six significant digits, for human-facing summaries.
std::string rounded(double x);

// FNV-1a 64-bit digest, rendered as 16 hex characters.
std::string digest(std::string_view text);

// Flags naming the conventions every report is computed under.
inline constexpr const char* kJSignConvention = "vacuum-calibrated";
inline constexpr const char* kMoMeasure = "proper";

// Minimal CSV writer: optional '#' provenance lines, header, rows.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& os) : os_(os) {}

  void comment(std::string_view line);
  void header(std::initializer_list<std::string_view> columns);
  void header(const std::vector<std::string>& columns);

  CsvWriter& cell(double x);
  CsvWriter& cell(std::string_view text);
  CsvWriter& cell(bool flag);
  void end_row();

 private:
  void separator();

  std::ostream& os_;
  bool row_started_ = false;
};

}  // namespace collapse
