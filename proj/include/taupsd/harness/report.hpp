#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

namespace taupsd::harness {

enum class Status { Pass, Warn, Fail, Info };
const char* to_string(Status s);

struct CheckRow {
  std::string check;
  double measured = 0.0;
  std::string target;  // human-readable relation, e.g. "<= 1e-08"
  double tolerance = 0.0;
  Status status = Status::Info;
};

/// Rows plus context for one experiment run. Hard rows fail; soft rows
/// (boundedness over a family) only warn.
struct RunReport {
  nlohmann::json config;
  nlohmann::json provenance;
  nlohmann::json details = nlohmann::json::object();
  double seconds = 0.0;
  std::vector<CheckRow> rows;

  void at_most(const std::string& check, double measured, double limit, bool hard = true);
  void at_least(const std::string& check, double measured, double limit, bool hard = true);
  /// |measured - target| <= rel * |target|.
  void within_rel(const std::string& check, double measured, double target, double rel,
                  bool hard = true);
  void in_range(const std::string& check, double measured, double lo, double hi, bool hard = true);
  void info(const std::string& check, double measured);

  const CheckRow* find(const std::string& check) const;
  int count(Status s) const;
  bool passed() const { return count(Status::Fail) == 0; }
};

/// Shortest round-trip decimal form of a double.
std::string format_number(double v);

std::string rows_csv(const RunReport& r);
nlohmann::json to_json(const RunReport& r);

/// Writes report.json and rows.csv into `dir` (created if missing).
void write_report(const RunReport& r, const std::filesystem::path& dir);

}  // namespace taupsd::harness
