#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace szmod {

/// Tabular experiment record: echoed parameters, a flat numeric table, and
/// free-form metadata. The CSV form is free of timestamps so identical specs
/// produce byte-identical files; the JSON form adds a timestamp at write time.
struct ExperimentReport {
  std::vector<std::pair<std::string, std::string>> spec_echo;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::vector<std::pair<std::string, std::string>> metadata;

  void echo(std::string key, std::string value) {
    spec_echo.emplace_back(std::move(key), std::move(value));
  }
  void meta(std::string key, std::string value) {
    metadata.emplace_back(std::move(key), std::move(value));
  }
  void add_row(std::vector<double> row);

  /// Header row then data rows, comma separated, 17 significant digits,
  /// UNIX newlines.
  void write_csv(std::ostream& os) const;
  void write_json(std::ostream& os) const;
};

/// 17-significant-digit decimal form (round-trips doubles).
std::string format_double(double v);

/// Writes JSON when the path ends in ".json", CSV otherwise. Creates parent
/// directories as needed.
void write_report_file(const ExperimentReport& report, const std::string& path);

}  // namespace szmod
