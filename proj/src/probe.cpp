#include "blochkit/probe.hpp"

#include <algorithm>
#include <cmath>

#include "blochkit/bloch.hpp"
#include "blochkit/mult_operator.hpp"

namespace blochkit {

const std::vector<std::string>& probe_questions() {
  static const std::vector<std::string> q{"omega-vs-rho", "omega-vs-omega0", "omega0-blowup", "norm-sharpness"};
  return q;
}

AnalysisReport run_probe(const std::string& question, const DomainDescriptor& d,
                         const std::optional<SymbolExpr>& psi, const SamplingConfig& cfg, int points,
                         const std::vector<double>& eps_ladder) {
  if (!metric_supported(d)) throw UnsupportedOperation("probes need a ball, polydisk or product of these");
  if (points < 1) throw DomainError("points must be >= 1");
  AnalysisReport rep;
  rep.verdicts["verdict"] = "exploratory";
  rep.verdicts["question"] = question;

  OmegaFamilyConfig fam_cfg;
  fam_cfg.seed = cfg.seed;

  if (question == "omega-vs-rho") {
    const OmegaFamily family(d, fam_cfg);
    rep.table_columns = {"gauge", "omega_lower", "rho_lower", "rho_upper", "gap"};
    for (const auto& z : sample_interior(d, points, cfg.seed)) {
      const auto rho = rho_from_origin(d, z);
      const double w = family.lower(z);
      rep.table_rows.push_back({gauge(d, z), w, rho.lower, rho.upper, rho.upper - w});
    }
  } else if (question == "omega-vs-omega0") {
    const OmegaFamily family(d, fam_cfg);
    fam_cfg.star_little = true;
    const OmegaFamily star(d, fam_cfg);
    rep.table_columns = {"gauge", "omega_lower", "omega0_lower", "ratio"};
    for (const auto& z : sample_interior(d, points, cfg.seed)) {
      const double w = family.lower(z), w0 = star.lower(z);
      rep.table_rows.push_back({gauge(d, z), w, w0, w > 0.0 ? w0 / w : 1.0});
    }
  } else if (question == "omega0-blowup") {
    fam_cfg.star_little = true;
    const OmegaFamily star(d, fam_cfg);
    rep.table_columns = {"eps", "omega0_min", "omega0_max", "rho_upper_max"};
    for (double eps : eps_ladder) {
      double lo = kInf, hi = 0.0, up = 0.0;
      for (const auto& z : sample_near_distinguished_boundary(d, points, eps, cfg.seed)) {
        const double w0 = star.lower(z);
        lo = std::min(lo, w0);
        hi = std::max(hi, w0);
        up = std::max(up, rho_from_origin(d, z).upper);
      }
      rep.table_rows.push_back({eps, lo, hi, up});
    }
  } else if (question == "norm-sharpness") {
    if (!psi) throw DomainError("norm-sharpness needs --symbol");
    const auto nb = norm_bounds(d, *psi, cfg);
    const auto op = empirical_opnorm_lower(d, *psi, default_battery(d, cfg.seed), cfg);
    rep.table_columns = {"norm_lower", "norm_upper", "empirical_lower", "gap"};
    rep.table_rows.push_back({nb.lower, nb.upper_estimate, op.value, nb.upper_estimate - op.value});
    rep.verdicts["witness"] = op.witness;
  } else {
    throw DomainError("unknown probe question '" + question + "'");
  }
  return rep;
}

}  // namespace blochkit
