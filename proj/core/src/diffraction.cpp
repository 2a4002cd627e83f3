#include "subrayleigh/diffraction.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "subrayleigh/errors.hpp"
#include "subrayleigh/quadrature.hpp"

namespace subrayleigh {

namespace {

constexpr double kPi = std::numbers::pi;

double squared_norm(Vec2 v) { return v.x * v.x + v.y * v.y; }

// sum_{n=0}^{M-1} exp(i n phase), term by term.
Complex array_factor(double phase, int count) {
  Complex sum(0.0, 0.0);
  for (int n = 0; n < count; ++n) {
    sum += std::polar(1.0, n * phase);
  }
  return sum;
}

}  // namespace

double sinc(double x) noexcept {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

Complex fraunhofer_field(Vec2 detector, Vec2 emitter, const Aperture& aperture,
                         const Geometry& geometry) {
  const double k = geometry.wavenumber();
  const double big_z = geometry.source_distance();
  const double small_z = geometry.detector_distance();

  const double cx = k * aperture.height() / (2.0 * big_z * small_z);
  const double cy = k * aperture.width() / (2.0 * big_z * small_z);
  const double ux = emitter.x * small_z + detector.x * big_z;
  const double uy = emitter.y * small_z + detector.y * big_z;
  const double shape = cx * sinc(cx * ux) * cy * sinc(cy * uy);

  const double phase =
      0.5 * k * (2.0 * big_z * big_z + squared_norm(emitter)) / big_z +
      0.5 * k * (2.0 * small_z * small_z + squared_norm(detector)) / small_z;

  const Complex prefactor(0.0, geometry.amplitude() * geometry.wavelength() /
                                   (kPi * kPi));
  return prefactor * std::polar(1.0, phase) * shape;
}

Complex grating_field(Vec2 detector, Vec2 emitter, const Aperture& aperture,
                      const Geometry& geometry) {
  if (aperture.kind() != ApertureKind::Grating) {
    throw std::invalid_argument("grating_field needs a grating aperture");
  }
  if (detector.y != 0.0 || emitter.y != 0.0) {
    throw std::invalid_argument(
        "grating_field is restricted to the x-z plane (y must be 0)");
  }
  const Complex single = fraunhofer_field(detector, emitter, aperture, geometry);
  const int count = aperture.slit_count();
  if (count == 1) {
    return single;
  }
  const double kd = geometry.wavenumber() * aperture.slit_separation();
  const Complex source =
      array_factor(kd * emitter.x / geometry.source_distance(), count);
  const Complex detect =
      array_factor(-kd * detector.x / geometry.detector_distance(), count);
  return single * source * detect;
}

Complex field_amplitude(Vec2 detector, Vec2 emitter, const Aperture& aperture,
                        const Geometry& geometry) {
  if (aperture.kind() == ApertureKind::Grating) {
    return grating_field(detector, emitter, aperture, geometry);
  }
  return fraunhofer_field(detector, emitter, aperture, geometry);
}

void validate(const QuadratureSpec& spec) {
  if (spec.points_per_axis < 2) {
    throw std::invalid_argument("points_per_axis must be >= 2");
  }
  if (spec.subdivisions < 1) {
    throw std::invalid_argument("subdivisions must be >= 1");
  }
}

namespace {

Complex fresnel_quadrature(Vec2 detector, Vec2 emitter,
                           const Aperture& aperture, const Geometry& geometry,
                           const GaussLegendreRule& base, int subdivisions) {
  const double k = geometry.wavenumber();
  const double big_z = geometry.source_distance();
  const double small_z = geometry.detector_distance();

  // Integrand phase k/2 (|rho_j - rho_0|^2 / R_z + |rho_0 - rho_i|^2 / r_z)
  // split into x and y parts; the double sum below runs over the tensor grid.
  auto weighted_phases = [&](const GaussLegendreRule& rule, double source,
                             double target) {
    std::vector<Complex> out(rule.nodes.size());
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      const double t = rule.nodes[i];
      const double phase = 0.5 * k *
                           ((source - t) * (source - t) / big_z +
                            (t - target) * (t - target) / small_z);
      out[i] = rule.weights[i] * std::polar(1.0, phase);
    }
    return out;
  };

  const double half_b = 0.5 * aperture.width();
  const auto y_rule =
      composite_gauss_legendre(base, -half_b, half_b, subdivisions);
  const auto y_terms = weighted_phases(y_rule, emitter.y, detector.y);

  Complex integral(0.0, 0.0);
  const double half_a = 0.5 * aperture.height();
  for (int n = 0; n < aperture.slit_count(); ++n) {
    const double centre = n * aperture.slit_separation();
    const auto x_rule = composite_gauss_legendre(base, centre - half_a,
                                                 centre + half_a, subdivisions);
    const auto x_terms = weighted_phases(x_rule, emitter.x, detector.x);
    Complex slit(0.0, 0.0);
    for (const Complex& fx : x_terms) {
      for (const Complex& fy : y_terms) {
        slit += fx * fy;
      }
    }
    integral += slit;
  }

  const Complex prefactor =
      Complex(0.0, -geometry.amplitude() / geometry.wavelength()) *
      std::polar(1.0, k * big_z) * std::polar(1.0, k * small_z) /
      (big_z * small_z);
  return prefactor * integral;
}

}  // namespace

OracleField fresnel_field_oracle(Vec2 detector, Vec2 emitter,
                                 const Aperture& aperture,
                                 const Geometry& geometry,
                                 const QuadratureSpec& spec,
                                 std::optional<double> tolerance) {
  validate(spec);
  const auto base = gauss_legendre(spec.points_per_axis);
  const int coarse_sub = spec.subdivisions;
  const int fine_sub = 2 * spec.subdivisions;
  const Complex coarse = fresnel_quadrature(detector, emitter, aperture,
                                            geometry, base, coarse_sub);
  const Complex fine = fresnel_quadrature(detector, emitter, aperture,
                                          geometry, base, fine_sub);

  const double fine_mag = std::abs(fine);
  const double diff = std::abs(fine_mag - std::abs(coarse));
  double change = 0.0;
  if (fine_mag > 0.0) {
    change = diff / fine_mag;
  } else if (diff > 0.0) {
    change = std::numeric_limits<double>::infinity();
  }

  if (tolerance && !(change <= *tolerance)) {
    std::ostringstream msg;
    msg << "Fresnel quadrature did not converge at detector (" << detector.x
        << ", " << detector.y << "): subdivisions " << coarse_sub << " -> "
        << fine_sub << " changed |U| by " << change << " (tolerance "
        << *tolerance << ")";
    throw NumericalError(msg.str());
  }
  return OracleField{fine, change, coarse_sub, fine_sub};
}

double fraunhofer_validity_margin(Vec2 /*detector*/, const Aperture& aperture,
                                  const Geometry& geometry) {
  const double extent_x =
      (aperture.slit_count() - 1) * aperture.slit_separation() +
      aperture.height();
  const double half_x = 0.5 * extent_x;
  const double half_y = 0.5 * aperture.width();
  const double max_rho_sq = half_x * half_x + half_y * half_y;
  return geometry.detector_distance() /
         (0.5 * geometry.wavenumber() * max_rho_sq);
}

}  // namespace subrayleigh
