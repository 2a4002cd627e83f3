#pragma once

#include <cstddef>
#include <vector>

#include "subrayleigh/geometry.hpp"

namespace subrayleigh {

/// Nonnegative samples on a uniform lattice of scan coordinates.
///
/// Coordinates must be strictly increasing and every gap an integer multiple
/// of the lattice step to 1e-9 relative; a gap wider than one step marks
/// excluded lattice points (singularities removed from a scan grid).
class SampledSignal {
 public:
  static constexpr std::size_t kMinSamples = 16;

  /// Throws std::invalid_argument on any violated invariant.
  SampledSignal(std::vector<double> coordinates, std::vector<double> values);

  const std::vector<double>& coordinates() const noexcept { return coords_; }
  const std::vector<double>& values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }

  /// Lattice spacing.
  double step() const noexcept { return step_; }
  /// Lattice index of each sample relative to the first one.
  const std::vector<std::size_t>& lattice_indices() const noexcept {
    return indices_;
  }
  /// Number of lattice sites from first to last sample, gaps included.
  std::size_t lattice_size() const noexcept { return indices_.back() + 1; }

  friend bool operator==(const SampledSignal&, const SampledSignal&) = default;

 private:
  std::vector<double> coords_;
  std::vector<double> values_;
  double step_ = 0.0;
  std::vector<std::size_t> indices_;
};

struct FringeReport {
  /// Cycles per meter of scan coordinate.
  double dominant_frequency = 0.0;
  int zero_count = 0;
  double visibility = 0.0;
};

/// Frequency of the largest DFT magnitude of the mean-subtracted signal,
/// refined by a parabola through the peak bin and its neighbours. The DFT runs
/// over the full lattice with excluded sites left empty, so a window holding
/// an integer number of periods of sin^2(pi f r) returns f exactly.
///
/// Throws NumericalError when the peak bin is below 2, i.e. fewer than two
/// periods fit in the window.
double dominant_frequency(const SampledSignal& signal);

/// Number of interior local minima whose depth is below
/// `threshold * max(values)`. The depth is the vertex of the parabola through
/// the minimum and its two neighbours, so zeros that fall between samples
/// still register. Throws std::invalid_argument on threshold <= 0.
int count_zeros(const SampledSignal& signal, double threshold);

/// (max - min) / (max + min). Throws NumericalError on an all-zero signal.
double visibility(const SampledSignal& signal);

/// Pointwise values / envelope. Envelope entries must be finite and > 0.
SampledSignal flatten_envelope(const SampledSignal& signal,
                               const std::vector<double>& envelope);

/// Whether a scan reaching scan_max covers the first diffraction order of a
/// fringe `enhancement` times faster than the classical one:
/// k a scan_max / (2 r_z) >= 2 pi / enhancement.
bool abbe_range_check(const Aperture& aperture, const Geometry& geometry,
                      double scan_max, int enhancement);

/// Uniform grid r_n = lo + n (hi - lo) / steps, n = 1..steps (the lower end
/// is open). Points within half a step of any excluded coordinate are dropped;
/// the dropped coordinates are appended to `dropped` when it is non-null.
std::vector<double> scan_grid(double lo, double hi, int steps,
                              const std::vector<double>& excluded = {},
                              std::vector<double>* dropped = nullptr);

/// Default zero threshold used by the fringe report.
inline constexpr double kZeroThreshold = 1e-5;

/// dominant_frequency, count_zeros(kZeroThreshold) and visibility together.
FringeReport analyse(const SampledSignal& signal);

}  // namespace subrayleigh
