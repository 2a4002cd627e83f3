#include "subrayleigh/scan.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <thread>

#include "subrayleigh/errors.hpp"

namespace subrayleigh {

namespace {

constexpr double kPi = std::numbers::pi;

struct ScenarioName {
  Scenario scenario;
  std::string_view name;
};

constexpr ScenarioName kScenarioNames[] = {
    {Scenario::ClassicalRect, "ClassicalRect"},
    {Scenario::ClassicalGrating, "ClassicalGrating"},
    {Scenario::G2Mirror, "G2Mirror"},
    {Scenario::G2Coincident, "G2Coincident"},
    {Scenario::G4Quad, "G4Quad"},
    {Scenario::G2Grating, "G2Grating"},
};

bool is_classical(Scenario s) {
  return s == Scenario::ClassicalRect || s == Scenario::ClassicalGrating;
}

EmitterArray scenario_emitters(const ScanConfig& c) {
  switch (c.scenario) {
    case Scenario::ClassicalRect:
    case Scenario::ClassicalGrating:
      return EmitterArray({{c.base_x, 0.0}});
    case Scenario::G4Quad:
      return emitter_quad(c.geometry, c.aperture);
    case Scenario::G2Mirror:
    case Scenario::G2Coincident:
    case Scenario::G2Grating:
      return emitter_pair(c.geometry, c.aperture, c.base_x);
  }
  throw std::invalid_argument("unknown scenario");
}

DetectorLayout scenario_detectors(const ScanConfig& c, double r) {
  switch (c.scenario) {
    case Scenario::ClassicalRect:
    case Scenario::ClassicalGrating:
      return DetectorLayout({{r, 0.0}});
    case Scenario::G2Mirror:
      return resolve_layout(Placement::MirrorPair, r, c.geometry, c.aperture);
    case Scenario::G2Coincident:
      return resolve_layout(Placement::CoincidentPair, r, c.geometry,
                            c.aperture);
    case Scenario::G4Quad:
      return resolve_layout(Placement::StaggeredQuad, r, c.geometry,
                            c.aperture);
    case Scenario::G2Grating:
      return grating_pair_layout(r, c.detector_rule, c.aperture, c.geometry);
  }
  throw std::invalid_argument("unknown scenario");
}

// Evaluates fn(i) for i in [0, count) on `workers` threads, each writing only
// its own slots.
template <typename Fn>
std::vector<double> parallel_evaluate(std::size_t count, unsigned workers,
                                      Fn fn) {
  std::vector<double> out(count);
  const unsigned threads =
      std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(count)));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) {
      out[i] = fn(i);
    }
    return out;
  }
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < count; i += threads) {
          out[i] = fn(i);
        }
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) {
    th.join();
  }
  for (const auto& e : errors) {
    if (e) {
      std::rethrow_exception(e);
    }
  }
  return out;
}

double single_slit_intensity(Vec2 detector, const ScanConfig& c) {
  return classical_intensity(
      detector, Aperture::rect(c.aperture.height(), c.aperture.width()),
      c.geometry);
}

SampledSignal flattened(const SampledSignal& s, EnvelopeKind kind,
                        const ScanConfig& c) {
  if (kind == EnvelopeKind::None) {
    return s;
  }
  std::vector<double> env(s.size());
  for (std::size_t i = 0; i < env.size(); ++i) {
    env[i] = envelope_value(kind, s.coordinates()[i], c);
  }
  return flatten_envelope(s, env);
}

}  // namespace

std::string_view to_string(Scenario scenario) {
  for (const auto& entry : kScenarioNames) {
    if (entry.scenario == scenario) {
      return entry.name;
    }
  }
  return "unknown";
}

std::optional<Scenario> scenario_from_string(std::string_view name) {
  for (const auto& entry : kScenarioNames) {
    if (entry.name == name) {
      return entry.scenario;
    }
  }
  return std::nullopt;
}

std::string_view to_string(EnvelopeKind kind) {
  switch (kind) {
    case EnvelopeKind::None:
      return "none";
    case EnvelopeKind::InverseSquare:
      return "inverse-square";
    case EnvelopeKind::PairPlus:
      return "pair-plus";
    case EnvelopeKind::PairMinusExact:
      return "pair-minus-exact";
    case EnvelopeKind::SingleSlit:
      return "single-slit";
    case EnvelopeKind::SingleSlitPair:
      return "single-slit-pair";
  }
  return "unknown";
}

void validate(const ScanConfig& c) {
  if (!std::isfinite(c.scan_min) || !std::isfinite(c.scan_max) ||
      !(c.scan_min < c.scan_max)) {
    throw ConfigError("scan_min must be less than scan_max");
  }
  if (c.steps < static_cast<int>(SampledSignal::kMinSamples)) {
    throw ConfigError("steps must be at least 16");
  }
  if (!std::isfinite(c.base_x)) {
    throw ConfigError("base_x must be finite");
  }
  const bool grating = c.aperture.kind() == ApertureKind::Grating;
  switch (c.scenario) {
    case Scenario::ClassicalRect:
    case Scenario::G4Quad:
      if (grating) {
        throw ConfigError(std::string(to_string(c.scenario)) +
                          " requires a rectangular aperture");
      }
      break;
    case Scenario::ClassicalGrating:
      if (!grating) {
        throw ConfigError("ClassicalGrating requires a grating aperture");
      }
      break;
    case Scenario::G2Grating:
      if (!grating) {
        throw ConfigError("G2Grating requires a grating aperture");
      }
      if (c.aperture.slit_count() % 2 == 0) {
        throw ConfigError(
            "G2Grating requires an odd M (slit_count); the product form holds "
            "for odd M only");
      }
      break;
    case Scenario::G2Mirror:
    case Scenario::G2Coincident:
      break;
  }
  if (c.oracle) {
    if (c.oracle->quadrature.points_per_axis < 2) {
      throw ConfigError("oracle.points_per_axis must be >= 2");
    }
    if (c.oracle->quadrature.subdivisions < 1) {
      throw ConfigError("oracle.subdivisions must be >= 1");
    }
    if (!(c.oracle->tolerance > 0.0)) {
      throw ConfigError("oracle.tolerance must be positive");
    }
  }
}

EnvelopeKind scenario_envelope(const ScanConfig& c) {
  const bool rect = c.aperture.kind() == ApertureKind::Rect;
  switch (c.scenario) {
    case Scenario::ClassicalRect:
    case Scenario::ClassicalGrating:
      return reference_envelope(c);
    case Scenario::G2Mirror:
      return rect && c.base_x == 0.0 ? EnvelopeKind::PairMinusExact
                                     : EnvelopeKind::None;
    case Scenario::G2Coincident:
      return rect && c.base_x == 0.0 ? EnvelopeKind::PairPlus
                                     : EnvelopeKind::None;
    case Scenario::G2Grating:
      return EnvelopeKind::SingleSlitPair;
    case Scenario::G4Quad:
      return EnvelopeKind::None;
  }
  return EnvelopeKind::None;
}

EnvelopeKind reference_envelope(const ScanConfig& c) {
  return c.aperture.kind() == ApertureKind::Grating ? EnvelopeKind::SingleSlit
                                                    : EnvelopeKind::InverseSquare;
}

std::vector<double> singular_points(const ScanConfig& c) {
  std::vector<double> points{0.0};
  const double d = detector_offset(c.geometry, c.aperture);
  // Zeros of the single-slit pattern, r = n lambda r_z / a with n != 0,
  // shifted by `shift`, over the scan window.
  auto add_slit_zeros = [&](double shift) {
    const double zero = c.geometry.wavelength() * c.geometry.detector_distance() /
                        c.aperture.height();
    const auto lo = static_cast<long>(std::floor((c.scan_min + shift) / zero)) - 1;
    const auto hi = static_cast<long>(std::ceil((c.scan_max + shift) / zero)) + 1;
    for (long n = lo; n <= hi; ++n) {
      if (n != 0) {
        points.push_back(n * zero - shift);
      }
    }
  };
  if (reference_envelope(c) == EnvelopeKind::SingleSlit) {
    add_slit_zeros(0.0);
  }
  switch (scenario_envelope(c)) {
    case EnvelopeKind::PairPlus:
      points.push_back(-d);
      break;
    case EnvelopeKind::PairMinusExact:
      points.push_back(-d);
      points.push_back(d);
      break;
    case EnvelopeKind::SingleSlitPair:
      // The second detector sits at +-(r + pi r_z / (k d)).
      add_slit_zeros(kPi * c.geometry.detector_distance() /
                     (c.geometry.wavenumber() * c.aperture.slit_separation()));
      break;
    case EnvelopeKind::None:
    case EnvelopeKind::InverseSquare:
    case EnvelopeKind::SingleSlit:
      break;
  }
  return points;
}

double envelope_value(EnvelopeKind kind, double r, const ScanConfig& c) {
  switch (kind) {
    case EnvelopeKind::None:
      return 1.0;
    case EnvelopeKind::InverseSquare: {
      // classical_intensity at (r, 0) with sin^2(k a r / 2 r_z) removed.
      const double k = c.geometry.wavenumber();
      const double rz = c.geometry.detector_distance();
      const double lead = 8.0 * c.geometry.amplitude() * rz /
                          (kPi * k * c.geometry.source_distance());
      const double gy = k * c.aperture.width() / (2.0 * rz);
      return lead * lead * gy * gy / (r * r);
    }
    case EnvelopeKind::PairPlus:
      return pair_envelope(r, PairVariant::Plus, c.aperture, c.geometry);
    case EnvelopeKind::PairMinusExact:
      return pair_envelope_exact(r, PairVariant::Minus, c.aperture,
                                 c.geometry);
    case EnvelopeKind::SingleSlit:
      return single_slit_intensity({r, 0.0}, c);
    case EnvelopeKind::SingleSlitPair: {
      const auto layout =
          grating_pair_layout(r, c.detector_rule, c.aperture, c.geometry);
      return single_slit_intensity(layout[0], c) *
             single_slit_intensity(layout[1], c);
    }
  }
  return 1.0;
}

double scenario_signal(const ScanConfig& c, double r) {
  if (is_classical(c.scenario)) {
    return classical_signal(c, r);
  }
  return glauber_correlation(scenario_detectors(c, r), scenario_emitters(c),
                             c.aperture, c.geometry);
}

double classical_signal(const ScanConfig& c, double r) {
  return classical_intensity({r, 0.0}, c.aperture, c.geometry);
}

std::optional<double> ScanResult::frequency_ratio() const {
  if (!classical_report || classical_report->dominant_frequency == 0.0) {
    return std::nullopt;
  }
  return report.dominant_frequency / classical_report->dominant_frequency;
}

void analyse_result(ScanResult& result) {
  result.report = analyse(
      flattened(result.signal, result.metadata.envelope, result.config));
  if (result.classical_reference) {
    result.classical_report =
        analyse(flattened(*result.classical_reference,
                          result.metadata.classical_envelope, result.config));
  }
}

ScanResult run_scan(const ScanConfig& config, unsigned workers) {
  validate(config);
  std::vector<double> dropped;
  const auto grid = scan_grid(config.scan_min, config.scan_max, config.steps,
                              singular_points(config), &dropped);
  if (grid.size() < SampledSignal::kMinSamples) {
    throw ConfigError("scan grid has fewer than 16 usable points");
  }

  const auto emitters = scenario_emitters(config);
  const bool classical = is_classical(config.scenario);
  auto values = parallel_evaluate(grid.size(), workers, [&](std::size_t i) {
    if (classical) {
      return classical_signal(config, grid[i]);
    }
    return glauber_correlation(scenario_detectors(config, grid[i]), emitters,
                               config.aperture, config.geometry);
  });
  auto reference = parallel_evaluate(grid.size(), workers, [&](std::size_t i) {
    return classical_signal(config, grid[i]);
  });

  ScanMetadata meta;
  meta.wavenumber = config.geometry.wavenumber();
  meta.source_offset = source_offset(config.geometry, config.aperture);
  meta.detector_offset = detector_offset(config.geometry, config.aperture);
  meta.validity_margin =
      fraunhofer_validity_margin({0.0, 0.0}, config.aperture, config.geometry);
  meta.excluded = std::move(dropped);
  meta.envelope = scenario_envelope(config);
  meta.classical_envelope = reference_envelope(config);

  ScanResult result{config,
                    SampledSignal(grid, std::move(values)),
                    FringeReport{},
                    SampledSignal(grid, std::move(reference)),
                    std::nullopt,
                    std::move(meta)};
  analyse_result(result);
  return result;
}

std::vector<double> oracle_grid(const ScanConfig& config) {
  const auto full = scan_grid(config.scan_min, config.scan_max, config.steps);
  const std::size_t stride =
      (full.size() + kOracleMaxPoints - 1) / kOracleMaxPoints;
  std::vector<double> out;
  for (std::size_t i = stride - 1; i < full.size(); i += stride) {
    out.push_back(full[i]);
  }
  return out;
}

OracleReport run_oracle_check(const ScanConfig& config) {
  validate(config);
  if (!config.oracle) {
    throw ConfigError("oracle check requested but the config has no oracle");
  }
  const auto grid = oracle_grid(config);
  const auto emitters = scenario_emitters(config);
  const double normalization =
      -config.geometry.source_distance() * config.geometry.detector_distance();

  OracleReport report;
  report.normalization = normalization;
  report.validity_margin =
      fraunhofer_validity_margin({0.0, 0.0}, config.aperture, config.geometry);
  report.fraunhofer_regime = report.validity_margin >= kFraunhoferMargin;

  for (const auto& emitter : emitters.positions()) {
    std::vector<Complex> far;
    std::vector<Complex> fresnel;
    for (double r : grid) {
      const auto layout = scenario_detectors(config, r);
      for (const auto& detector : layout.positions()) {
        far.push_back(normalization * field_amplitude(detector, emitter,
                                                      config.aperture,
                                                      config.geometry));
        const auto o = fresnel_field_oracle(
            detector, emitter, config.aperture, config.geometry,
            config.oracle->quadrature, config.oracle->tolerance);
        fresnel.push_back(o.value);
        report.max_self_change = std::max(report.max_self_change, o.self_change);
      }
    }
    report.sample_count += far.size();

    std::size_t ref = 0;
    for (std::size_t i = 1; i < fresnel.size(); ++i) {
      if (std::abs(fresnel[i]) > std::abs(fresnel[ref])) {
        ref = i;
      }
    }
    const double peak = std::abs(fresnel[ref]);
    if (peak == 0.0) {
      continue;
    }
    for (std::size_t i = 0; i < far.size(); ++i) {
      const double mag_o = std::abs(fresnel[i]);
      const double diff = std::abs(std::abs(far[i]) - mag_o);
      report.max_relative_error =
          std::max(report.max_relative_error, diff / peak);
      if (mag_o < 0.05 * peak) {
        continue;
      }
      report.max_pointwise_error =
          std::max(report.max_pointwise_error, diff / mag_o);
      const double phase_far = std::arg(far[i] * std::conj(far[ref]));
      const double phase_o = std::arg(fresnel[i] * std::conj(fresnel[ref]));
      const double err = std::abs(std::remainder(phase_far - phase_o, 2 * kPi));
      report.max_phase_error = std::max(report.max_phase_error, err);
    }
  }
  report.agrees = report.max_relative_error <= kOracleTolerance;
  return report;
}

}  // namespace subrayleigh
