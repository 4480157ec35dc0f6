#include "blochkit/report.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

namespace blochkit {

std::string to_string(EstimateMode mode) {
  switch (mode) {
    case EstimateMode::Exact:
      return "exact";
    case EstimateMode::SampledLower:
      return "sampled-lower";
    case EstimateMode::AnalyticBounds:
      break;
  }
  return "analytic-bounds";
}

ResultEntry ResultEntry::from(std::string name, const EstimateInterval& e, std::string ref) {
  return {std::move(name), e.lower, e.lower, e.upper, e.mode, std::move(ref)};
}

ResultEntry ResultEntry::scalar(std::string name, double v, std::string ref, EstimateMode mode) {
  return {std::move(name), v, v, v, mode, std::move(ref)};
}

nlohmann::ordered_json json_number(double v) {
  if (std::isinf(v)) return v > 0 ? "+inf" : "-inf";
  if (std::isnan(v)) return "nan";
  return v;
}

bool AnalysisReport::all_checks_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass; });
}

nlohmann::ordered_json AnalysisReport::to_json() const {
  nlohmann::ordered_json j;
  j["version"] = kVersion;
  j["command"] = command;
  j["domain"] = domain;
  j["symbol"] = symbol;
  j["seed"] = seed;
  j["samples"] = samples;
  auto& res = j["results"] = nlohmann::ordered_json::array();
  for (const auto& r : results) {
    res.push_back({{"name", r.name},
                   {"value", json_number(r.value)},
                   {"lower", json_number(r.lower)},
                   {"upper", json_number(r.upper)},
                   {"mode", to_string(r.mode)},
                   {"paper_ref", r.paper_ref}});
  }
  auto v = verdicts;
  if (!checks.empty()) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& c : checks)
      arr.push_back({{"criterion", c.criterion},
                     {"name", c.name},
                     {"paper_ref", c.paper_ref},
                     {"measured", json_number(c.measured)},
                     {"tolerance", json_number(c.tolerance)},
                     {"pass", c.pass},
                     {"detail", c.detail}});
    v["checks"] = std::move(arr);
    v["pass"] = all_checks_pass();
  }
  if (!table_columns.empty()) {
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : table_rows) {
      auto r = nlohmann::ordered_json::array();
      for (double x : row) r.push_back(json_number(x));
      rows.push_back(std::move(r));
    }
    v["table"] = {{"columns", table_columns}, {"rows", std::move(rows)}};
  }
  j["verdicts"] = std::move(v);
  j["elapsed_ms"] = elapsed_ms;
  return j;
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

std::string num(double v) {
  if (std::isinf(v)) return v > 0 ? "+inf" : "-inf";
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

}  // namespace

std::string AnalysisReport::to_csv() const {
  std::ostringstream os;
  if (!table_columns.empty()) {
    for (std::size_t i = 0; i < table_columns.size(); ++i) os << (i ? "," : "") << csv_field(table_columns[i]);
    os << '\n';
    for (const auto& row : table_rows) {
      for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << num(row[i]);
      os << '\n';
    }
    return os.str();
  }
  os << "name,value,lower,upper,mode,paper_ref\n";
  for (const auto& r : results)
    os << csv_field(r.name) << ',' << num(r.value) << ',' << num(r.lower) << ',' << num(r.upper) << ','
       << to_string(r.mode) << ',' << csv_field(r.paper_ref) << '\n';
  for (const auto& c : checks)
    os << csv_field("check:" + c.name) << ',' << num(c.measured) << ",," << num(c.tolerance) << ','
       << (c.pass ? "pass" : "fail") << ',' << csv_field(c.paper_ref) << '\n';
  return os.str();
}

std::string AnalysisReport::to_pretty() const {
  std::ostringstream os;
  os << "blochkit " << kVersion << "  " << command;
  if (!domain.empty()) os << "  domain=" << domain;
  if (!symbol.empty()) os << "  symbol=" << symbol;
  os << "  seed=" << seed << "  samples=" << samples << '\n';
  std::size_t w = 4;
  for (const auto& r : results) w = std::max(w, r.name.size());
  for (const auto& r : results) {
    os << "  " << std::left << std::setw(static_cast<int>(w)) << r.name << "  ";
    if (r.mode == EstimateMode::Exact)
      os << num(r.value);
    else
      os << '[' << num(r.lower) << ", " << num(r.upper) << ']';
    os << "  (" << to_string(r.mode) << ")\n";
  }
  for (const auto& c : checks)
    os << "  [" << (c.pass ? "pass" : "FAIL") << "] " << c.name << "  measured=" << num(c.measured)
       << " tol=" << num(c.tolerance) << (c.detail.empty() ? "" : "  " + c.detail) << '\n';
  if (!table_columns.empty()) {
    for (const auto& c : table_columns) os << std::setw(16) << c;
    os << '\n';
    for (const auto& row : table_rows) {
      for (double x : row) os << std::setw(16) << num(x).substr(0, 15);
      os << '\n';
    }
  }
  if (!verdicts.empty()) os << "  verdicts: " << verdicts.dump() << '\n';
  return os.str();
}

std::string AnalysisReport::render(const std::string& format) const {
  if (format == "json") return to_json().dump(2) + "\n";
  if (format == "csv") return to_csv();
  if (format == "pretty") return to_pretty();
  throw DomainError("unknown format '" + format + "' (json, csv, pretty)");
}

}  // namespace blochkit
