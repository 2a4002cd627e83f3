#pragma once

#include "subrayleigh/diffraction.hpp"
#include "subrayleigh/geometry.hpp"
#include "subrayleigh/permanent.hpp"

namespace subrayleigh {

/// U(detector_i, emitter_j) for every pair. Counts must match.
AmplitudeMatrix amplitude_matrix(const DetectorLayout& detectors,
                                 const EmitterArray& emitters,
                                 const Aperture& aperture,
                                 const Geometry& geometry);

/// |perm(M)|^2 / N^N: each field operator carries 1/sqrt(N), so N = 2 gives
/// the familiar 1/4 |U11 U22 + U12 U21|^2.
double correlation_from_amplitudes(const AmplitudeMatrix& amplitudes);

/// N-th order correlation for N emitters and N detectors. Throws
/// std::invalid_argument when the counts differ.
double glauber_correlation(const DetectorLayout& detectors,
                           const EmitterArray& emitters,
                           const Aperture& aperture, const Geometry& geometry);

/// Far-field intensity of a coherently illuminated aperture.
///   Rect:    (8 A r_z / (pi k r_x r_y R_z))^2 sin^2(k a r_x/2r_z) sin^2(k b r_y/2r_z)
///   Grating: Rect value * |sum_n exp(i k n d r_x / r_z)|^2   (needs y = 0)
/// Both sine quotients are evaluated through sinc.
double classical_intensity(Vec2 detector, const Aperture& aperture,
                           const Geometry& geometry);

/// |sum_{n=0}^{M-1} exp(i n phase)|^2 = (1 - cos(M phase)) / (1 - cos phase),
/// summed directly so the principal maxima give M^2.
double dirichlet_kernel(double phase, int count);

/// Which pair layout the closed form describes.
enum class PairVariant {
  Plus,   // detectors coincident, r2 = +r1
  Minus,  // detectors mirrored, r2 = -r1
};

/// (8 A^2 r_z^2 / (pi^2 k^2 R_z^2 B(r)))^2 with
///   B+ = r^2 + pi r_z r / (k a),   B- = (4/pi)(r^2 - pi^2 r_z^2 / (k^2 a^2)).
/// Throws std::domain_error where B vanishes.
double pair_envelope(double r, PairVariant variant, const Aperture& aperture,
                     const Geometry& geometry);

/// Closed-form two-photon correlation of the offset emitter pair,
///   pair_envelope(r) * sin^2(k a r / r_z).
/// At the points where B vanishes (r = -D for Plus, r = +-D for Minus, with
/// D = pi r_z / (k a)) the expression is 0 * inf: it is refused with
/// std::domain_error unless `limit` is set, in which case the finite value of
/// glauber_correlation for that layout (base_x = 0) is returned. B+ at r = 0
/// is removable and handled in sinc form.
double pair_closed_form(double r, PairVariant variant, const Aperture& aperture,
                        const Geometry& geometry, bool limit = false);

/// Exact envelope E(r) of glauber_correlation for emitter_pair(base_x = 0)
/// and the variant's detector pair, y = 0 throughout, such that
///   glauber_correlation = E(r) sin^2(k a r / r_z).
/// With x = k a r / (2 r_z) and P = A lambda c_x c_y / pi^2:
///   Plus:  E = (P^4 / 4) / (x (x + pi/2))^2
///   Minus: E = (P^4 / 4) (pi / (2 x (pi^2/4 - x^2)))^2
/// Plus is proportional to pair_envelope; Minus is pair_envelope times
/// const / r^2. Throws std::domain_error at x = 0, and at x = -pi/2 (Plus) or
/// x = +-pi/2 (Minus).
double pair_envelope_exact(double r, PairVariant variant,
                           const Aperture& aperture, const Geometry& geometry);

/// Position rule for the second detector in a grating scan.
enum class OffsetRule {
  PlusOffset,   // r2 = +(r1 + pi r_z / (k d))
  MinusOffset,  // r2 = -(r1 + pi r_z / (k d))
};

DetectorLayout grating_pair_layout(double r1, OffsetRule rule,
                                   const Aperture& aperture,
                                   const Geometry& geometry);

/// Direct two-photon correlation through a grating with grating fields.
/// Any M; requires a grating aperture and two emitters.
double grating_pair_correlation(double r1, OffsetRule rule,
                                const EmitterArray& emitters,
                                const Aperture& aperture,
                                const Geometry& geometry);

/// Pieces of the odd-M product form  G2 = G2_0 * (1 - cos 2kMd r1/r_z) / (1 - cos 2kd r1/r_z).
struct GratingProductForm {
  /// Correlation with single-slit fields at the same detectors.
  double single_slit = 0.0;
  /// |prod_j sum_n exp(i k n d R_jx / R_z)|^2: r-independent illumination
  /// weight from the emitter-side array factors.
  double source_array_factor = 0.0;
  /// Dirichlet ratio at phase 2 k d r1 / r_z, evaluated as a direct sum.
  double ratio = 0.0;
  /// single_slit * source_array_factor * ratio.
  double value = 0.0;
};

/// Throws std::domain_error for even M, where the product form does not hold.
GratingProductForm grating_product_form(double r1, OffsetRule rule,
                                        const EmitterArray& emitters,
                                        const Aperture& aperture,
                                        const Geometry& geometry);

}  // namespace subrayleigh
