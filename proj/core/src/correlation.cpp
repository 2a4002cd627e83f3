#include "subrayleigh/correlation.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace subrayleigh {

namespace {

constexpr double kPi = std::numbers::pi;

void require_rect(const Aperture& aperture, const char* what) {
  if (aperture.kind() != ApertureKind::Rect) {
    throw std::invalid_argument(std::string(what) +
                                " needs a rectangular aperture");
  }
}

void require_grating(const Aperture& aperture, const char* what) {
  if (aperture.kind() != ApertureKind::Grating) {
    throw std::invalid_argument(std::string(what) + " needs a grating");
  }
}

bool near(double r, double point, double scale) {
  return std::abs(r - point) <= 1e-12 * scale;
}

// Common factor (8 A^2 r_z^2 / (pi^2 k^2 R_z^2))^2 of the closed forms.
double closed_form_scale(const Geometry& g) {
  const double k = g.wavenumber();
  const double a2 = g.amplitude() * g.amplitude();
  const double rz = g.detector_distance();
  const double big_z = g.source_distance();
  const double s = 8.0 * a2 * rz * rz / (kPi * kPi * k * k * big_z * big_z);
  return s * s;
}

bool pair_singular(double r, PairVariant variant, double d) {
  if (variant == PairVariant::Plus) {
    return near(r, -d, d);
  }
  return near(r, d, d) || near(r, -d, d);
}

DetectorLayout pair_layout(double r, PairVariant variant, const Geometry& g,
                           const Aperture& aperture) {
  return resolve_layout(variant == PairVariant::Plus ? Placement::CoincidentPair
                                                     : Placement::MirrorPair,
                        r, g, aperture);
}

}  // namespace

AmplitudeMatrix amplitude_matrix(const DetectorLayout& detectors,
                                 const EmitterArray& emitters,
                                 const Aperture& aperture,
                                 const Geometry& geometry) {
  if (detectors.size() != emitters.size()) {
    throw std::invalid_argument(
        "detector count must equal emitter count for an N-photon correlation");
  }
  const std::size_t n = detectors.size();
  AmplitudeMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      m(i, j) = field_amplitude(detectors[i], emitters[j], aperture, geometry);
    }
  }
  return m;
}

double correlation_from_amplitudes(const AmplitudeMatrix& amplitudes) {
  const double n = static_cast<double>(amplitudes.size());
  return std::norm(permanent(amplitudes)) / std::pow(n, n);
}

double glauber_correlation(const DetectorLayout& detectors,
                           const EmitterArray& emitters,
                           const Aperture& aperture, const Geometry& geometry) {
  return correlation_from_amplitudes(
      amplitude_matrix(detectors, emitters, aperture, geometry));
}

double dirichlet_kernel(double phase, int count) {
  Complex sum(0.0, 0.0);
  for (int n = 0; n < count; ++n) {
    sum += std::polar(1.0, n * phase);
  }
  return std::norm(sum);
}

double classical_intensity(Vec2 detector, const Aperture& aperture,
                           const Geometry& geometry) {
  const double k = geometry.wavenumber();
  const double rz = geometry.detector_distance();
  const double lead = 8.0 * geometry.amplitude() * rz /
                      (kPi * k * geometry.source_distance());
  const double gx = k * aperture.height() / (2.0 * rz);
  const double gy = k * aperture.width() / (2.0 * rz);
  const double fx = gx * sinc(gx * detector.x);
  const double fy = gy * sinc(gy * detector.y);
  const double single = lead * lead * fx * fx * fy * fy;
  if (aperture.kind() == ApertureKind::Rect) {
    return single;
  }
  if (detector.y != 0.0) {
    throw std::invalid_argument(
        "grating intensity is restricted to the x-z plane (y must be 0)");
  }
  const double phase = k * aperture.slit_separation() * detector.x / rz;
  return single * dirichlet_kernel(phase, aperture.slit_count());
}

double pair_envelope(double r, PairVariant variant, const Aperture& aperture,
                     const Geometry& geometry) {
  require_rect(aperture, "pair_envelope");
  const double d = detector_offset(geometry, aperture);
  const double b = variant == PairVariant::Plus
                       ? r * r + d * r
                       : (4.0 / kPi) * (r * r - d * d);
  if (b == 0.0 || (variant == PairVariant::Plus && near(r, 0.0, d)) ||
      pair_singular(r, variant, d)) {
    throw std::domain_error("pair envelope is singular at this coordinate");
  }
  return closed_form_scale(geometry) / (b * b);
}

double pair_closed_form(double r, PairVariant variant, const Aperture& aperture,
                        const Geometry& geometry, bool limit) {
  require_rect(aperture, "pair_closed_form");
  const double d = detector_offset(geometry, aperture);
  if (pair_singular(r, variant, d)) {
    if (!limit) {
      throw std::domain_error(
          "closed form is 0 * inf at this coordinate; request the limit");
    }
    return glauber_correlation(pair_layout(r, variant, geometry, aperture),
                               emitter_pair(geometry, aperture, 0.0), aperture,
                               geometry);
  }
  const double g = geometry.wavenumber() * aperture.height() /
                   geometry.detector_distance();
  if (variant == PairVariant::Plus) {
    // sin(g r) / (r (r + D)) with the r = 0 zero cancelled through sinc.
    const double q = g * sinc(g * r) / (r + d);
    return closed_form_scale(geometry) * q * q;
  }
  const double s = std::sin(g * r);
  return pair_envelope(r, variant, aperture, geometry) * s * s;
}

double pair_envelope_exact(double r, PairVariant variant,
                           const Aperture& aperture, const Geometry& geometry) {
  require_rect(aperture, "pair_envelope_exact");
  const double d = detector_offset(geometry, aperture);
  if (near(r, 0.0, d) || pair_singular(r, variant, d)) {
    throw std::domain_error("exact pair envelope is singular here");
  }
  const double k = geometry.wavenumber();
  const double big_z = geometry.source_distance();
  const double rz = geometry.detector_distance();
  const double cx = k * aperture.height() / (2.0 * big_z * rz);
  const double cy = k * aperture.width() / (2.0 * big_z * rz);
  const double p =
      geometry.amplitude() * geometry.wavelength() * cx * cy / (kPi * kPi);
  const double p4 = p * p * p * p;
  const double x = k * aperture.height() * r / (2.0 * rz);
  const double q = variant == PairVariant::Plus
                       ? 1.0 / (x * (x + 0.5 * kPi))
                       : kPi / (2.0 * x * (0.25 * kPi * kPi - x * x));
  return 0.25 * p4 * q * q;
}

DetectorLayout grating_pair_layout(double r1, OffsetRule rule,
                                   const Aperture& aperture,
                                   const Geometry& geometry) {
  require_grating(aperture, "grating_pair_layout");
  const double step = kPi * geometry.detector_distance() /
                      (geometry.wavenumber() * aperture.slit_separation());
  const double r2 = rule == OffsetRule::PlusOffset ? r1 + step : -(r1 + step);
  return DetectorLayout({{r1, 0.0}, {r2, 0.0}});
}

double grating_pair_correlation(double r1, OffsetRule rule,
                                const EmitterArray& emitters,
                                const Aperture& aperture,
                                const Geometry& geometry) {
  require_grating(aperture, "grating_pair_correlation");
  if (emitters.size() != 2) {
    throw std::invalid_argument("grating pair correlation needs two emitters");
  }
  return glauber_correlation(grating_pair_layout(r1, rule, aperture, geometry),
                             emitters, aperture, geometry);
}

GratingProductForm grating_product_form(double r1, OffsetRule rule,
                                        const EmitterArray& emitters,
                                        const Aperture& aperture,
                                        const Geometry& geometry) {
  require_grating(aperture, "grating_product_form");
  const int m = aperture.slit_count();
  if (m % 2 == 0) {
    throw std::domain_error("grating product form holds for odd M only");
  }
  if (emitters.size() != 2) {
    throw std::invalid_argument("grating product form needs two emitters");
  }
  const auto detectors = grating_pair_layout(r1, rule, aperture, geometry);

  AmplitudeMatrix single(2);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      single(i, j) =
          fraunhofer_field(detectors[i], emitters[j], aperture, geometry);
    }
  }

  const double k = geometry.wavenumber();
  const double kd = k * aperture.slit_separation();
  GratingProductForm out;
  out.single_slit = correlation_from_amplitudes(single);
  out.source_array_factor = 1.0;
  for (const auto& e : emitters.positions()) {
    out.source_array_factor *=
        dirichlet_kernel(kd * e.x / geometry.source_distance(), m);
  }
  out.ratio = dirichlet_kernel(2.0 * kd * r1 / geometry.detector_distance(), m);
  out.value = out.single_slit * out.source_array_factor * out.ratio;
  return out;
}

}  // namespace subrayleigh
