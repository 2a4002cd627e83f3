#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "subrayleigh/analysis.hpp"
#include "subrayleigh/correlation.hpp"
#include "subrayleigh/diffraction.hpp"
#include "subrayleigh/geometry.hpp"

namespace subrayleigh {

enum class Scenario {
  ClassicalRect,
  ClassicalGrating,
  G2Mirror,
  G2Coincident,
  G4Quad,
  G2Grating,
};

std::string_view to_string(Scenario scenario);
std::optional<Scenario> scenario_from_string(std::string_view name);

struct OracleSettings {
  QuadratureSpec quadrature;
  /// Allowed relative change of |U| under subdivision doubling.
  double tolerance = 1e-3;
};

struct ScanConfig {
  Geometry geometry{500e-9, 0.1, 1.0, 1.0};
  Aperture aperture = Aperture::rect(20e-6, 20e-6);
  Scenario scenario = Scenario::G2Mirror;
  double scan_min = 0.0;
  double scan_max = 2.0 * 500e-9 * 1.0 / 20e-6;
  int steps = 512;
  /// x of the first emitter of the pair.
  double base_x = 0.0;
  /// Second-detector rule for G2Grating.
  OffsetRule detector_rule = OffsetRule::PlusOffset;
  std::optional<OracleSettings> oracle;
  std::string output_path;
};

/// Throws ConfigError naming the violated invariant.
void validate(const ScanConfig& config);

/// How a scan's values were flattened before frequency and visibility
/// analysis.
enum class EnvelopeKind {
  None,
  InverseSquare,  // classical single-slit 1/r^2 prefactor
  PairPlus,       // pair_envelope(Plus)
  PairMinusExact, // pair_envelope_exact(Minus)
  SingleSlit,     // classical intensity of one slit of the grating
  SingleSlitPair, // SingleSlit at both detectors of a grating pair
};

std::string_view to_string(EnvelopeKind kind);

struct ScanMetadata {
  double wavenumber = 0.0;
  /// pi R_z / (k a)
  double source_offset = 0.0;
  /// pi r_z / (k a)
  double detector_offset = 0.0;
  double validity_margin = 0.0;
  /// Grid coordinates dropped as envelope singularities.
  std::vector<double> excluded;
  EnvelopeKind envelope = EnvelopeKind::None;
  EnvelopeKind classical_envelope = EnvelopeKind::InverseSquare;
};

struct ScanResult {
  ScanConfig config;
  SampledSignal signal;
  FringeReport report;
  std::optional<SampledSignal> classical_reference;
  std::optional<FringeReport> classical_report;
  ScanMetadata metadata;

  /// report / classical_report dominant frequencies, when both exist.
  std::optional<double> frequency_ratio() const;
};

/// Envelope used for the scenario's signal (None for G4Quad and for pair
/// scenarios with base_x != 0).
EnvelopeKind scenario_envelope(const ScanConfig& config);

/// Envelope of the classical reference: InverseSquare for a rectangle,
/// SingleSlit for a grating, whose fringes would otherwise be swamped by the
/// single-slit pattern.
EnvelopeKind reference_envelope(const ScanConfig& config);

/// Coordinates where the scenario's envelope (or the classical one) is
/// singular; excluded from the scan grid.
std::vector<double> singular_points(const ScanConfig& config);

/// Envelope value at r; 1 for EnvelopeKind::None.
double envelope_value(EnvelopeKind kind, double r, const ScanConfig& config);

/// Signal of the scenario at scan coordinate r (no grid logic).
double scenario_signal(const ScanConfig& config, double r);

/// Classical intensity of the scenario's aperture at detector (r, 0).
double classical_signal(const ScanConfig& config, double r);

/// Fringe reports for signal and classical reference, recomputed from the
/// sampled values. Throws NumericalError when a signal is too short.
void analyse_result(ScanResult& result);

/// Evaluates the scenario on the grid with `workers` threads (0 means one).
/// Output is ordered by grid index and identical for any worker count.
ScanResult run_scan(const ScanConfig& config, unsigned workers = 1);

struct OracleReport {
  std::size_t sample_count = 0;
  /// max | |U_far| - |U_fresnel| | / max|U_fresnel|, per emitter.
  double max_relative_error = 0.0;
  /// Pointwise | |U_far| - |U_fresnel| | / |U_fresnel| where |U_fresnel| is at
  /// least 5% of that emitter's peak.
  double max_pointwise_error = 0.0;
  /// Largest error of phase differences against the emitter's peak sample, on
  /// the same non-nodal samples.
  double max_phase_error = 0.0;
  double max_self_change = 0.0;
  double validity_margin = 0.0;
  /// Constant the far-field amplitude is multiplied by before comparison:
  /// -R_z r_z, the ratio of the quadrature prefactor to the closed-form one.
  double normalization = 0.0;
  /// validity_margin >= kFraunhoferMargin.
  bool fraunhofer_regime = false;
  /// max_relative_error <= kOracleTolerance.
  bool agrees = false;
};

inline constexpr double kFraunhoferMargin = 100.0;
inline constexpr double kOracleTolerance = 0.01;
inline constexpr std::size_t kOracleMaxPoints = 64;

/// Compares far-field and quadrature fields for every (emitter, detector) pair
/// of the scenario on the scan grid decimated to at most 64 points. Requires
/// config.oracle; throws NumericalError on quadrature non-convergence.
OracleReport run_oracle_check(const ScanConfig& config);

/// The decimated grid used by run_oracle_check.
std::vector<double> oracle_grid(const ScanConfig& config);

}  // namespace subrayleigh
