#include "subrayleigh/geometry.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace subrayleigh {

namespace {

void require_positive(double value, const char* name) {
  if (!std::isfinite(value) || value <= 0.0) {
    throw std::invalid_argument(std::string(name) +
                                " must be finite and positive");
  }
}

void require_finite(const std::vector<Vec2>& points, const char* what) {
  if (points.empty()) {
    throw std::invalid_argument(std::string(what) + " must not be empty");
  }
  for (const auto& p : points) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw std::invalid_argument(std::string(what) +
                                  " contains a non-finite coordinate");
    }
  }
}

}  // namespace

Geometry::Geometry(double wavelength, double source_distance,
                   double detector_distance, double amplitude)
    : wavelength_(wavelength),
      source_distance_(source_distance),
      detector_distance_(detector_distance),
      amplitude_(amplitude) {
  require_positive(wavelength, "wavelength");
  require_positive(source_distance, "source_distance");
  require_positive(detector_distance, "detector_distance");
  require_positive(amplitude, "amplitude");
}

Aperture::Aperture(ApertureKind kind, double height, double width,
                   double slit_separation, int slit_count)
    : kind_(kind),
      height_(height),
      width_(width),
      slit_separation_(slit_separation),
      slit_count_(slit_count) {}

Aperture Aperture::rect(double height, double width) {
  require_positive(height, "aperture height");
  require_positive(width, "aperture width");
  return Aperture(ApertureKind::Rect, height, width, 0.0, 1);
}

Aperture Aperture::grating(double height, double width, double slit_separation,
                           int slit_count) {
  require_positive(height, "aperture height");
  require_positive(width, "aperture width");
  require_positive(slit_separation, "slit separation");
  if (slit_separation <= height) {
    throw std::invalid_argument(
        "slit separation must exceed the slit height (slits would overlap)");
  }
  if (slit_count < 1) {
    throw std::invalid_argument("slit count must be at least 1");
  }
  return Aperture(ApertureKind::Grating, height, width, slit_separation,
                  slit_count);
}

EmitterArray::EmitterArray(std::vector<Vec2> positions)
    : positions_(std::move(positions)) {
  require_finite(positions_, "emitter array");
}

DetectorLayout::DetectorLayout(std::vector<Vec2> positions)
    : positions_(std::move(positions)) {
  require_finite(positions_, "detector layout");
}

double source_offset(const Geometry& geometry, const Aperture& aperture) {
  return std::numbers::pi * geometry.source_distance() /
         (geometry.wavenumber() * aperture.height());
}

double detector_offset(const Geometry& geometry, const Aperture& aperture) {
  return std::numbers::pi * geometry.detector_distance() /
         (geometry.wavenumber() * aperture.height());
}

EmitterArray emitter_pair(const Geometry& geometry, const Aperture& aperture,
                          double base_x) {
  const double offset = source_offset(geometry, aperture);
  return EmitterArray({{base_x, 0.0}, {base_x + offset, 0.0}});
}

EmitterArray emitter_quad(const Geometry& geometry, const Aperture& aperture) {
  const double s = source_offset(geometry, aperture);
  return EmitterArray({{-s, 0.0}, {0.0, 0.0}, {0.5 * s, 0.0}, {s, 0.0}});
}

DetectorLayout resolve_layout(Placement placement, double r,
                              const Geometry& geometry,
                              const Aperture& aperture) {
  if (!std::isfinite(r)) {
    throw std::invalid_argument("scan coordinate must be finite");
  }
  switch (placement) {
    case Placement::MirrorPair:
      return DetectorLayout({{r, 0.0}, {-r, 0.0}});
    case Placement::CoincidentPair:
      return DetectorLayout({{r, 0.0}, {r, 0.0}});
    case Placement::StaggeredQuad: {
      const double d = detector_offset(geometry, aperture);
      return DetectorLayout(
          {{r, 0.0}, {-r, 0.0}, {-r + d, 0.0}, {r + 0.5 * d, 0.0}});
    }
  }
  throw std::invalid_argument("unknown placement");
}

}  // namespace subrayleigh
