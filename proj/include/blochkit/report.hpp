#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "blochkit/common.hpp"

namespace blochkit {

inline constexpr const char* kVersion = "0.1.0";

struct ResultEntry {
  std::string name;
  double value = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  EstimateMode mode = EstimateMode::Exact;
  std::string paper_ref;

  static ResultEntry from(std::string name, const EstimateInterval& e, std::string ref);
  static ResultEntry scalar(std::string name, double v, std::string ref,
                            EstimateMode mode = EstimateMode::Exact);
};

/// One check of a verify suite.
struct CheckResult {
  int criterion = 0;
  std::string name;
  std::string paper_ref;
  double measured = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string detail;
};

struct AnalysisReport {
  std::string command;
  std::string domain;
  std::string symbol;
  std::uint64_t seed = 42;
  long samples = 0;
  std::vector<ResultEntry> results;
  nlohmann::ordered_json verdicts = nlohmann::ordered_json::object();
  std::vector<CheckResult> checks;
  /// Data table for probes; emitted under verdicts.table (JSON) or as the
  /// CSV body.
  std::vector<std::string> table_columns;
  std::vector<std::vector<double>> table_rows;
  long elapsed_ms = 0;

  void add(ResultEntry e) { results.push_back(std::move(e)); }
  bool all_checks_pass() const;

  nlohmann::ordered_json to_json() const;
  std::string to_csv() const;
  std::string to_pretty() const;
  std::string render(const std::string& format) const;
};

/// Finite numbers as JSON numbers, infinities as "+inf"/"-inf".
nlohmann::ordered_json json_number(double v);

}  // namespace blochkit
