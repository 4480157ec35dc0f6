#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "blochkit/report.hpp"
#include "blochkit/symbols.hpp"

namespace blochkit {

struct VerifyConfig {
  std::uint64_t seed = 42;
  /// Sample count for sup estimates inside the checks.
  int samples = 20000;
};

/// Suite names accepted by run_suite, in the order `all` runs them.
const std::vector<std::string>& suite_names();

/// Runs one suite (or `all`) and returns its checks. Throws DomainError for
/// an unknown name.
std::vector<CheckResult> run_suite(const std::string& suite, const VerifyConfig& cfg);

/// Random polynomial with 1..6 terms of total degree <= max_degree and
/// complex-normal coefficients scaled by `scale`; reproducible from
/// (seed, index). With `nonconstant` at least one term has positive degree.
Polynomial random_polynomial(int arity, int max_degree, std::uint64_t seed, std::uint64_t index,
                             double scale = 0.5, bool nonconstant = true);

// Individual checks, grouped as the suites run them.
std::vector<CheckResult> check_q_oracle(const VerifyConfig& cfg);
std::vector<CheckResult> check_omega(const VerifyConfig& cfg);
std::vector<CheckResult> check_product_rule(const VerifyConfig& cfg);
std::vector<CheckResult> check_growth_lemma(const VerifyConfig& cfg);
std::vector<CheckResult> check_norm_sandwich(const VerifyConfig& cfg);
std::vector<CheckResult> check_spectrum(const VerifyConfig& cfg);
std::vector<CheckResult> check_compactness(const VerifyConfig& cfg);
std::vector<CheckResult> check_isometry(const VerifyConfig& cfg);
std::vector<CheckResult> check_constants(const VerifyConfig& cfg);

}  // namespace blochkit
