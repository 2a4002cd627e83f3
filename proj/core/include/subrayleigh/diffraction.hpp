#pragma once

#include <complex>
#include <optional>

#include "subrayleigh/geometry.hpp"

namespace subrayleigh {

using Complex = std::complex<double>;

/// sin(x)/x with the removable singularity filled in; Taylor series below
/// |x| < 1e-4.
double sinc(double x) noexcept;

/// Far-field amplitude from one emitter to one detector for a single
/// rectangular opening of the aperture's height and width centred on the axis:
///
///   U = (i A lambda / pi^2) exp(i k/2 (2R_z^2 + |rho_j|^2)/R_z)
///       exp(i k/2 (2r_z^2 + |rho_i|^2)/r_z)
///       * sin(c_x u_x)/u_x * sin(c_y u_y)/u_y
///
/// with u_x = R_jx r_z + r_ix R_z, c_x = k a / (2 R_z r_z) (b, y likewise).
/// Each quotient is evaluated as c sinc(c u), so the result is finite
/// everywhere. For a grating this is the single-slit factor.
Complex fraunhofer_field(Vec2 detector, Vec2 emitter, const Aperture& aperture,
                         const Geometry& geometry);

/// Single-slit field times the emitter-side and detector-side array factors
///   sum_n exp(+i k n d R_jx / R_z)  and  sum_n exp(-i k n d r_ix / r_z),
/// both summed term by term. Requires a grating aperture and y = 0 for both
/// points (std::invalid_argument otherwise). M = 1 returns fraunhofer_field
/// unchanged.
Complex grating_field(Vec2 detector, Vec2 emitter, const Aperture& aperture,
                      const Geometry& geometry);

/// grating_field for gratings, fraunhofer_field for rectangles.
Complex field_amplitude(Vec2 detector, Vec2 emitter, const Aperture& aperture,
                        const Geometry& geometry);

/// Composite Gauss-Legendre resolution of the Fresnel integral.
struct QuadratureSpec {
  int points_per_axis = 32;
  int subdivisions = 4;
};

/// Throws std::invalid_argument on points_per_axis < 2 or subdivisions < 1.
void validate(const QuadratureSpec& spec);

struct OracleField {
  /// Value at twice the requested subdivisions.
  Complex value;
  /// | |U(2s)| - |U(s)| | / |U(2s)|.
  double self_change = 0.0;
  int coarse_subdivisions = 0;
  int fine_subdivisions = 0;
};

/// Direct quadrature of the Fresnel diffraction integral
///
///   U = -(i A / lambda) e^{i k R_z} e^{i k r_z} / (R_z r_z)
///       * Int_A exp(i k/2 |rho_j - rho_0|^2 / R_z)
///               exp(i k/2 |rho_0 - rho_i|^2 / r_z) dS(rho_0)
///
/// over the open area (every slit of a grating). Evaluates at `spec` and at
/// doubled subdivisions; throws NumericalError with the subdivision trace when
/// `tolerance` is set and the relative change of |U| exceeds it.
OracleField fresnel_field_oracle(Vec2 detector, Vec2 emitter,
                                 const Aperture& aperture,
                                 const Geometry& geometry,
                                 const QuadratureSpec& spec = {},
                                 std::optional<double> tolerance = {});

/// r_z / ((k/2) max|rho_0|^2), with max|rho_0| the half-diagonal of the open
/// area (whole grating extent for gratings). Values >> 1 mean the far-field
/// form is trustworthy. The detector position does not enter this estimate.
double fraunhofer_validity_margin(Vec2 detector, const Aperture& aperture,
                                  const Geometry& geometry);

}  // namespace subrayleigh
