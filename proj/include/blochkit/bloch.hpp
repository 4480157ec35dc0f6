#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "blochkit/domain.hpp"
#include "blochkit/supremum.hpp"
#include "blochkit/symbols.hpp"

namespace blochkit {

/// Q_f(z): the Bergman-normalised size of the gradient,
///   sup_u |grad f(z) . u| / H_z(u, conj u)^{1/2} = (c^* H_z^{-1} c)^{1/2},  c = conj(grad f(z)).
double q_value(const DomainDescriptor& d, const SymbolExpr& f, const Point& z);

/// Brute-force version of q_value: the literal ratio maximised over `ndirs`
/// Halton-distributed unit directions plus the direction H_z^{-1} c. Uses the
/// metric matrix rather than the closed-form inverse.
double q_value_oracle(const DomainDescriptor& d, const SymbolExpr& f, const Point& z, int ndirs);

/// Certified upper bound on beta_f from the coefficients of a polynomial
/// (|d_j p| <= sum_alpha alpha_j |c_alpha| on the unit polydisk, and the
/// inverse metric is dominated by the identity). A bare log fraction gets 1
/// (h form) or |w| (fw form). nullopt for other symbols.
std::optional<double> certified_beta_upper(const DomainDescriptor& d, const SymbolExpr& f);

/// beta_f = sup_z Q_f(z), as a sampled lower bound (refined locally). `upper`
/// stays +inf unless the caller passes a certified bound.
EstimateInterval beta_estimate(const DomainDescriptor& d, const SymbolExpr& f, const SamplingConfig& cfg,
                               std::optional<double> certified_upper = std::nullopt);

/// |f(0)| + beta_f.
EstimateInterval bloch_norm_estimate(const DomainDescriptor& d, const SymbolExpr& f, const SamplingConfig& cfg,
                                     std::optional<double> certified_beta = std::nullopt);

/// max over random pairs of |f(z) - f(w)| / rho_upper(z, w). Half of the pairs
/// are independent, half are close pairs (|z - w| ~ 1e-3), which probe the
/// infinitesimal ratio Q_f. Always a lower bound for beta_f.
double lipschitz_beta_estimate(const DomainDescriptor& d, const SymbolExpr& f, int npairs, std::uint64_t seed);

/// omega(z) on the ball: 1/2 log((1 + |z|)/(1 - |z|)).
double omega_exact_ball(const Point& z);

/// [max_k arctanh|z_k|, straight-segment distance from 0] on the polydisk.
EstimateInterval omega_polydisk_bounds(const Point& z);

/// Analytic bounds on omega(z) for any metric-supported domain: exact on the
/// disk and ball, otherwise [largest factor distance, straight-segment length].
EstimateInterval omega_bounds(const DomainDescriptor& d, const Point& z);

struct OmegaFamilyConfig {
  /// Restrict to members whose decay profile is consistent with the
  /// *-little Bloch space (estimates omega_0 instead of omega).
  bool star_little = false;
  std::vector<double> radii{0.5, 0.9, 0.99, 0.999, 0.9999};
  std::vector<double> eps_ladder{0.1, 0.01, 0.001};
  int polynomial_degree = 4;
  int diagnostic_samples = 2000;
  std::uint64_t seed = 42;
};

/// The admissible test-function family for one domain, prepared once so that
/// the per-point lower bound is cheap. Members (all with f(0) = 0 and an
/// analytic bound on the Bloch norm):
///  - unit-parameter log fractions (h-forms) in each disk coordinate and the
///    matching directional form on each ball factor (norm <= 1);
///  - fw forms with |w| = r in each of `radii` (norm <= r);
///  - monomials z_j^m and, on ball factors, powers of the unit linear form
///    (norm bounded from coefficients).
class OmegaFamily {
 public:
  OmegaFamily(const DomainDescriptor& d, const OmegaFamilyConfig& cfg);

  /// max over admissible members of |f(z)| / ||f||_B-upper.
  double lower(const Point& z) const;

  bool h_forms_admissible() const { return h_admissible_; }
  const std::vector<double>& admissible_radii() const { return radii_; }
  const std::vector<int>& admissible_degrees() const { return degrees_; }

 private:
  DomainDescriptor domain_;
  std::vector<DomainAtom> atoms_;
  bool h_admissible_ = true;
  std::vector<double> radii_;
  std::vector<int> degrees_;
};

double omega_empirical_lower(const DomainDescriptor& d, const Point& z, const OmegaFamilyConfig& cfg = {});

enum class DecayVerdict { ConsistentWithMembership, EvidenceAgainst };
std::string to_string(DecayVerdict v);

struct DecayProfile {
  std::vector<std::pair<double, double>> ladder;  // (eps, max Q)
  DecayVerdict verdict = DecayVerdict::ConsistentWithMembership;
};

/// Max of Q_f over points approaching the distinguished boundary, one entry
/// per eps. Consistent when the profile does not increase and its last value
/// is below a quarter of its first (or it is identically zero). Never a proof.
DecayProfile little_star_membership_diagnostic(const DomainDescriptor& d, const SymbolExpr& f,
                                               const std::vector<double>& eps_ladder, int count = 2000,
                                               std::uint64_t seed = 42);

}  // namespace blochkit
