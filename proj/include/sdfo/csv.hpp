#pragma once

// Minimal CSV support: unquoted fields, header row, '\n' line endings.

#include <string>
#include <string_view>
#include <vector>

namespace sdfo {

/// %.17g, with "inf", "-inf" and "nan" for non-finite values.
std::string format_double(double v);
/// Parses what format_double writes.
double parse_double(std::string_view s);

std::string csv_line(const std::vector<std::string>& fields);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Index of a header column; throws if absent.
  std::size_t column(std::string_view name) const;
  const std::string& at(std::size_t row, std::string_view name) const;
};

CsvTable parse_csv(std::string_view text);
CsvTable read_csv(const std::string& path);

}  // namespace sdfo
