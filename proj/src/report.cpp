#include "szmod/report.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

namespace szmod {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void ExperimentReport::add_row(std::vector<double> row) {
  if (row.size() != columns.size()) {
    throw std::logic_error("report row width does not match column count");
  }
  rows.push_back(std::move(row));
}

void ExperimentReport::write_csv(std::ostream& os) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) os << ',';
    os << columns[i];
  }
  os << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      os << format_double(row[i]);
    }
    os << '\n';
  }
}

namespace {

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

void ExperimentReport::write_json(std::ostream& os) const {
  nlohmann::ordered_json doc;
  auto& echo = doc["spec_echo"];
  echo = nlohmann::ordered_json::object();
  for (const auto& [k, v] : spec_echo) echo[k] = v;

  auto& out_rows = doc["rows"];
  out_rows = nlohmann::ordered_json::array();
  for (const auto& row : rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) obj[columns[i]] = row[i];
    out_rows.push_back(std::move(obj));
  }

  auto& meta = doc["metadata"];
  meta = nlohmann::ordered_json::object();
  for (const auto& [k, v] : metadata) meta[k] = v;
  meta["timestamp"] = utc_timestamp();

  os << doc.dump(2) << '\n';
}

void write_report_file(const ExperimentReport& report, const std::string& path) {
  const std::filesystem::path fspath(path);
  if (fspath.has_parent_path()) {
    std::filesystem::create_directories(fspath.parent_path());
  }
  std::ofstream out(fspath);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  if (fspath.extension() == ".json") {
    report.write_json(out);
  } else {
    report.write_csv(out);
  }
}

}  // namespace szmod
