#pragma once

#include <optional>
#include <string>
#include <vector>

#include "blochkit/bloch.hpp"

namespace blochkit {

/// ||psi||_inf: sampled lower bound (refined), with the coefficient sum as a
/// certified upper bound for polynomials.
EstimateInterval sup_norm_estimate(const DomainDescriptor& d, const SymbolExpr& psi, const SamplingConfig& cfg);

enum class SigmaKind { Sigma, Sigma0 };

/// sigma_psi = sup_z omega(z) Q_psi(z) (or omega_0 for Sigma0).
/// Disk and ball: omega is exact, the result is a sampled lower bound.
/// Otherwise [sup omega_lower Q, sup omega_upper Q] over the same refined
/// sample, where omega_upper is the straight-segment distance; the upper end is
/// the sampled sup of an analytic envelope, not a certified bound on sigma.
EstimateInterval sigma_estimate(const DomainDescriptor& d, const SymbolExpr& psi, const SamplingConfig& cfg,
                                SigmaKind which = SigmaKind::Sigma);

enum class BoundednessVerdict { BoundedEvidence, UnboundedEvidence, Inconclusive };
std::string to_string(BoundednessVerdict v);

inline const std::vector<double> kBoundednessShells{0.9, 0.99, 0.999, 0.9999, 0.99999};

struct BoundednessReport {
  std::vector<double> shells;
  /// Max over each shell of the criterion quantity: sum over factors of
  /// log((1+|z_f|)/(1-|z_f|)) times Q_psi(z) (ball: the log of the full norm).
  std::vector<double> criterion_maxima;
  std::vector<double> sup_maxima;
  BoundednessVerdict verdict = BoundednessVerdict::Inconclusive;
  /// The *-little variant additionally needs psi's decay diagnostic.
  DecayProfile decay;
  BoundednessVerdict little_star_verdict = BoundednessVerdict::Inconclusive;
};

BoundednessReport boundedness_verdict(const DomainDescriptor& d, const SymbolExpr& psi, const SamplingConfig& cfg,
                                      int per_shell = 4000);

struct NormBounds {
  EstimateInterval sup_norm;
  EstimateInterval bloch_norm;
  EstimateInterval sigma;
  EstimateInterval sigma0;
  /// max{||psi||_B, ||psi||_inf} from sampled lower bounds.
  double lower = 0.0;
  /// max{||psi||_B, ||psi||_inf + sigma} from the sampled estimates.
  double upper_estimate = 0.0;
  /// Same with certified upper components; +inf when any is unavailable.
  double upper_certified = kInf;
  double upper_estimate_star = 0.0;  // sigma_0 variant
};

NormBounds norm_bounds(const DomainDescriptor& d, const SymbolExpr& psi, const SamplingConfig& cfg);

/// Test functions f for empirical_opnorm_lower: f = 1, z_j, 1 + z_j/2, h forms
/// in every coordinate and a few random quadratics.
std::vector<SymbolExpr> default_battery(const DomainDescriptor& d, std::uint64_t seed, int random_members = 6);

struct OpnormLower {
  double value = 0.0;
  std::string witness;
};

/// max over the battery of ||psi f||_B-lower / ||f||_B-upper. Every member
/// has a certified Bloch-norm upper bound, so the result is a lower bound for
/// ||M_psi||.
OpnormLower empirical_opnorm_lower(const DomainDescriptor& d, const SymbolExpr& psi,
                                   const std::vector<SymbolExpr>& battery, const SamplingConfig& cfg);

struct SpectrumCloud {
  std::vector<cplx> points;
  double re_min = 0, re_max = 0, im_min = 0, im_max = 0;
  double max_modulus = 0.0;
  double hull_area = 0.0;

  double distance(cplx lambda) const;
  /// sigma_psi / alpha^2 with alpha the distance from lambda to the cloud;
  /// nullopt when lambda sits on the cloud.
  std::optional<double> resolvent_scale(cplx lambda, double sigma) const;
};

SpectrumCloud spectrum_cloud(const DomainDescriptor& d, const SymbolExpr& psi, int nsamples, std::uint64_t seed);

struct CompactnessResult {
  bool compact = false;
  bool symbolic = false;  // decided from polynomial coefficients
  std::string reason;
  std::optional<std::pair<Point, cplx>> witness_a;
  std::optional<std::pair<Point, cplx>> witness_b;
};

CompactnessResult compactness_verdict(const DomainDescriptor& d, const SymbolExpr& psi, const SamplingConfig& cfg);

enum class IsometryVerdict { Isometry, NotIsometry, NotIsometryEvidence, Inconclusive };
std::string to_string(IsometryVerdict v);

struct IsometryResult {
  IsometryVerdict verdict = IsometryVerdict::Inconclusive;
  double bloch_constant = 0.0;
  bool class_d = false;
  cplx psi0;
  /// |psi(0)|^k for k = 1..K and the first k with |psi(0)|^k < 1 - c_D.
  std::vector<double> power_sequence;
  std::optional<int> crossing;
  /// Sampled ||psi^k||_B and beta_{psi^k} lower bounds, k = 1..K, measured
  /// with the metric the Bloch-constant table is stated in (registry_q_value).
  std::vector<double> power_norm_lower;
  std::vector<double> power_beta_lower;
  std::string reason;
};

IsometryResult isometry_verdict(const DomainDescriptor& d, const SymbolExpr& psi, int K, const SamplingConfig& cfg);

/// Everything norm_bounds computes plus the verdicts, for the JSON report.
struct OperatorReport {
  SymbolExpr symbol;
  DomainDescriptor domain;
  NormBounds bounds;
  BoundednessReport boundedness;
};

OperatorReport operator_report(const DomainDescriptor& d, const SymbolExpr& psi, const SamplingConfig& cfg);

}  // namespace blochkit
