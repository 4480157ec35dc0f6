#pragma once

#include <optional>
#include <string>
#include <vector>

#include "blochkit/report.hpp"
#include "blochkit/supremum.hpp"
#include "blochkit/symbols.hpp"

namespace blochkit {

/// omega-vs-rho, omega-vs-omega0, omega0-blowup, norm-sharpness.
const std::vector<std::string>& probe_questions();

/// Data tables for the open questions about omega, omega_0 and the norm
/// bounds. Nothing is concluded: verdicts.verdict is always "exploratory".
/// Ball, disk, polydisk and products of these only.
AnalysisReport run_probe(const std::string& question, const DomainDescriptor& d,
                         const std::optional<SymbolExpr>& psi, const SamplingConfig& cfg, int points,
                         const std::vector<double>& eps_ladder);

}  // namespace blochkit
