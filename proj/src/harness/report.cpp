#include "taupsd/harness/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

#include "taupsd/errors.hpp"

namespace taupsd::harness {

const char* to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Warn: return "warn";
    case Status::Fail: return "fail";
    case Status::Info: return "info";
  }
  return "?";
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

Status verdict(bool ok, bool hard) { return ok ? Status::Pass : (hard ? Status::Fail : Status::Warn); }

}  // namespace

void RunReport::at_most(const std::string& check, double measured, double limit, bool hard) {
  rows.push_back({check, measured, "<= " + format_number(limit), limit,
                  verdict(measured <= limit, hard)});
}

void RunReport::at_least(const std::string& check, double measured, double limit, bool hard) {
  rows.push_back({check, measured, ">= " + format_number(limit), limit,
                  verdict(measured >= limit, hard)});
}

void RunReport::within_rel(const std::string& check, double measured, double target, double rel,
                           bool hard) {
  const bool ok = std::abs(measured - target) <= rel * std::abs(target);
  rows.push_back({check, measured, format_number(target) + " rel " + format_number(rel), rel,
                  verdict(ok, hard)});
}

void RunReport::in_range(const std::string& check, double measured, double lo, double hi, bool hard) {
  rows.push_back({check, measured, "in [" + format_number(lo) + ", " + format_number(hi) + "]", 0.0,
                  verdict(measured >= lo && measured <= hi, hard)});
}

void RunReport::info(const std::string& check, double measured) {
  rows.push_back({check, measured, "", 0.0, Status::Info});
}

const CheckRow* RunReport::find(const std::string& check) const {
  for (const auto& r : rows)
    if (r.check == check) return &r;
  return nullptr;
}

int RunReport::count(Status s) const {
  int c = 0;
  for (const auto& r : rows) c += r.status == s;
  return c;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string rows_csv(const RunReport& r) {
  std::string out = "check,measured,target,tolerance,status\n";
  for (const auto& row : r.rows)
    out += csv_field(row.check) + "," + format_number(row.measured) + "," + csv_field(row.target) +
           "," + format_number(row.tolerance) + "," + to_string(row.status) + "\n";
  return out;
}

nlohmann::json to_json(const RunReport& r) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : r.rows) {
    // JSON has no NaN/inf; keep them as strings.
    nlohmann::json measured = std::isfinite(row.measured) ? nlohmann::json(row.measured)
                                                          : nlohmann::json(format_number(row.measured));
    rows.push_back({{"check", row.check}, {"measured", measured}, {"target", row.target},
                    {"tolerance", row.tolerance}, {"status", to_string(row.status)}});
  }
  return {{"config", r.config},
          {"provenance", r.provenance},
          {"seconds", r.seconds},
          {"summary",
           {{"pass", r.count(Status::Pass)},
            {"warn", r.count(Status::Warn)},
            {"fail", r.count(Status::Fail)},
            {"info", r.count(Status::Info)}}},
          {"rows", rows},
          {"details", r.details}};
}

void write_report(const RunReport& r, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::ofstream js(dir / "report.json");
  std::ofstream csv(dir / "rows.csv");
  if (!js || !csv) throw UsageError("output: cannot write into '" + dir.string() + "'");
  js << to_json(r).dump(2) << '\n';
  csv << rows_csv(r);
}

}  // namespace taupsd::harness
