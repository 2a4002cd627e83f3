#pragma once

#include <cstddef>
#include <numbers>
#include <vector>

namespace subrayleigh {

/// Transverse position in a plane normal to the optical axis, in meters.
/// The plane itself (source, aperture or detection) is implied by context.
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Vec2&, const Vec2&) = default;
};

/// Fixed z-axis layout: emitters at z = -R_z, aperture at z = 0, detectors at
/// z = +r_z. All lengths in meters; the amplitude is in arbitrary units.
class Geometry {
 public:
  /// Throws std::invalid_argument unless every argument is finite and > 0.
  Geometry(double wavelength, double source_distance, double detector_distance,
           double amplitude = 1.0);

  double wavelength() const noexcept { return wavelength_; }
  double source_distance() const noexcept { return source_distance_; }
  double detector_distance() const noexcept { return detector_distance_; }
  double amplitude() const noexcept { return amplitude_; }

  /// k = 2 pi / lambda. Derived on every call, never stored.
  double wavenumber() const noexcept {
    return 2.0 * std::numbers::pi / wavelength_;
  }

 private:
  double wavelength_;
  double source_distance_;
  double detector_distance_;
  double amplitude_;
};

inline double wavenumber(const Geometry& geometry) noexcept {
  return geometry.wavenumber();
}

enum class ApertureKind { Rect, Grating };

/// Rectangular opening of height a (x) and width b (y), or a grating of M such
/// openings whose x-centres sit at n*d, n = 0..M-1.
class Aperture {
 public:
  static Aperture rect(double height, double width);
  /// Requires d > a (no overlap) and M >= 1.
  static Aperture grating(double height, double width, double slit_separation,
                          int slit_count);

  ApertureKind kind() const noexcept { return kind_; }
  double height() const noexcept { return height_; }
  double width() const noexcept { return width_; }
  /// Zero for a rectangular aperture.
  double slit_separation() const noexcept { return slit_separation_; }
  /// One for a rectangular aperture.
  int slit_count() const noexcept { return slit_count_; }

 private:
  Aperture(ApertureKind kind, double height, double width,
           double slit_separation, int slit_count);

  ApertureKind kind_;
  double height_;
  double width_;
  double slit_separation_;
  int slit_count_;
};

/// Transverse emitter positions in the source plane. Coincident emitters are
/// allowed.
class EmitterArray {
 public:
  explicit EmitterArray(std::vector<Vec2> positions);

  const std::vector<Vec2>& positions() const noexcept { return positions_; }
  std::size_t size() const noexcept { return positions_.size(); }
  const Vec2& operator[](std::size_t i) const { return positions_[i]; }

 private:
  std::vector<Vec2> positions_;
};

/// Transverse detector positions in the detection plane.
class DetectorLayout {
 public:
  explicit DetectorLayout(std::vector<Vec2> positions);

  const std::vector<Vec2>& positions() const noexcept { return positions_; }
  std::size_t size() const noexcept { return positions_.size(); }
  const Vec2& operator[](std::size_t i) const { return positions_[i]; }

 private:
  std::vector<Vec2> positions_;
};

/// Detector arrangements driven by a single scan coordinate r.
enum class Placement {
  MirrorPair,      // x = +r, -r
  CoincidentPair,  // x = +r, +r
  StaggeredQuad,   // x = r, -r, -r + D, r + D/2 with D = pi r_z / (k a)
};

/// pi R_z / (k a): emitter spacing that shifts the single-slit sine argument
/// k a R_x / (2 R_z) by pi/2.
double source_offset(const Geometry& geometry, const Aperture& aperture);

/// pi r_z / (k a): the same quarter-fringe step measured in the detection plane.
double detector_offset(const Geometry& geometry, const Aperture& aperture);

/// Two emitters at x = base_x and base_x + source_offset, both at y = 0.
EmitterArray emitter_pair(const Geometry& geometry, const Aperture& aperture,
                          double base_x);

/// Four emitters at x = -S, 0, S/2, S with S = source_offset, y = 0.
EmitterArray emitter_quad(const Geometry& geometry, const Aperture& aperture);

/// Detector positions for a placement at scan coordinate r. All y are 0.
DetectorLayout resolve_layout(Placement placement, double r,
                              const Geometry& geometry,
                              const Aperture& aperture);

}  // namespace subrayleigh
