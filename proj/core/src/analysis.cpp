#include "subrayleigh/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "subrayleigh/errors.hpp"

namespace subrayleigh {

SampledSignal::SampledSignal(std::vector<double> coordinates,
                             std::vector<double> values)
    : coords_(std::move(coordinates)), values_(std::move(values)) {
  if (coords_.size() != values_.size()) {
    throw std::invalid_argument("coordinate and value counts differ");
  }
  if (coords_.size() < kMinSamples) {
    throw std::invalid_argument("a sampled signal needs at least 16 samples");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(coords_[i]) || !std::isfinite(values_[i])) {
      throw std::invalid_argument("sampled signal contains non-finite data");
    }
    if (values_[i] < 0.0) {
      throw std::invalid_argument("sampled signal values must be >= 0");
    }
  }
  double min_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < coords_.size(); ++i) {
    const double gap = coords_[i] - coords_[i - 1];
    if (!(gap > 0.0)) {
      throw std::invalid_argument("coordinates must be strictly increasing");
    }
    min_gap = std::min(min_gap, gap);
  }

  indices_.resize(coords_.size());
  indices_[0] = 0;
  for (std::size_t i = 1; i < coords_.size(); ++i) {
    const double gap = (coords_[i] - coords_[i - 1]) / min_gap;
    indices_[i] = indices_[i - 1] + static_cast<std::size_t>(std::llround(gap));
  }
  step_ = (coords_.back() - coords_.front()) /
          static_cast<double>(indices_.back());
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    const double expected =
        coords_.front() + static_cast<double>(indices_[i]) * step_;
    if (std::abs(coords_[i] - expected) > 1e-9 * step_) {
      throw std::invalid_argument(
          "coordinates are not on a uniform lattice (1e-9 relative)");
    }
  }
}

double dominant_frequency(const SampledSignal& signal) {
  const auto& values = signal.values();
  const auto& idx = signal.lattice_indices();
  const std::size_t lattice = signal.lattice_size();

  double mean = 0.0;
  for (double v : values) {
    mean += v;
  }
  mean /= static_cast<double>(values.size());

  std::vector<std::complex<double>> twiddle(lattice);
  for (std::size_t j = 0; j < lattice; ++j) {
    twiddle[j] = std::polar(1.0, -2.0 * std::numbers::pi *
                                     static_cast<double>(j) /
                                     static_cast<double>(lattice));
  }

  const std::size_t bins = lattice / 2;
  std::vector<double> magnitude(bins + 1, 0.0);
  for (std::size_t m = 1; m <= bins; ++m) {
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t i = 0; i < values.size(); ++i) {
      acc += (values[i] - mean) * twiddle[(m * idx[i]) % lattice];
    }
    magnitude[m] = std::abs(acc);
  }

  std::size_t peak = 1;
  for (std::size_t m = 2; m <= bins; ++m) {
    if (magnitude[m] > magnitude[peak]) {
      peak = m;
    }
  }
  if (peak < 2) {
    throw NumericalError(
        "fewer than two fringe periods in the scan window; widen the scan");
  }

  double offset = 0.0;
  if (peak < bins) {
    const double a = magnitude[peak - 1];
    const double b = magnitude[peak];
    const double c = magnitude[peak + 1];
    const double denom = a - 2.0 * b + c;
    if (denom != 0.0) {
      offset = std::clamp(0.5 * (a - c) / denom, -0.5, 0.5);
    }
  }
  const double window = static_cast<double>(lattice) * signal.step();
  return (static_cast<double>(peak) + offset) / window;
}

int count_zeros(const SampledSignal& signal, double threshold) {
  if (!(threshold > 0.0)) {
    throw std::invalid_argument("zero threshold must be positive");
  }
  const auto& v = signal.values();
  const double peak = *std::max_element(v.begin(), v.end());
  const double limit = threshold * peak;
  int zeros = 0;
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    if (!(v[i] < v[i - 1] && v[i] <= v[i + 1])) {
      continue;
    }
    double depth = v[i];
    const double curvature = v[i - 1] - 2.0 * v[i] + v[i + 1];
    if (curvature > 0.0) {
      const double slope = v[i - 1] - v[i + 1];
      depth = std::min(depth, v[i] - slope * slope / (8.0 * curvature));
    }
    if (std::max(depth, 0.0) < limit) {
      ++zeros;
    }
  }
  return zeros;
}

double visibility(const SampledSignal& signal) {
  const auto [lo, hi] =
      std::minmax_element(signal.values().begin(), signal.values().end());
  if (*hi == 0.0) {
    throw NumericalError("visibility is undefined for an all-zero signal");
  }
  return (*hi - *lo) / (*hi + *lo);
}

SampledSignal flatten_envelope(const SampledSignal& signal,
                               const std::vector<double>& envelope) {
  if (envelope.size() != signal.size()) {
    throw std::invalid_argument("envelope length differs from the signal");
  }
  std::vector<double> flat(signal.size());
  for (std::size_t i = 0; i < flat.size(); ++i) {
    if (!std::isfinite(envelope[i]) || !(envelope[i] > 0.0)) {
      throw std::invalid_argument("envelope entries must be finite and > 0");
    }
    flat[i] = signal.values()[i] / envelope[i];
  }
  return SampledSignal(signal.coordinates(), std::move(flat));
}

bool abbe_range_check(const Aperture& aperture, const Geometry& geometry,
                      double scan_max, int enhancement) {
  if (!(scan_max > 0.0)) {
    throw std::invalid_argument("scan_max must be positive");
  }
  if (enhancement < 1) {
    throw std::invalid_argument("enhancement must be a positive integer");
  }
  const double argument = geometry.wavenumber() * aperture.height() *
                          scan_max / (2.0 * geometry.detector_distance());
  const double needed = 2.0 * std::numbers::pi / enhancement;
  // Boundary is inclusive; allow for rounding in k a scan_max.
  return argument >= needed * (1.0 - 1e-12);
}

std::vector<double> scan_grid(double lo, double hi, int steps,
                              const std::vector<double>& excluded,
                              std::vector<double>* dropped) {
  if (steps < 1 || !(hi > lo)) {
    throw std::invalid_argument("scan grid needs hi > lo and steps >= 1");
  }
  const double h = (hi - lo) / steps;
  std::vector<double> grid;
  grid.reserve(steps);
  for (int n = 1; n <= steps; ++n) {
    const double r = n == steps ? hi : lo + n * h;
    const bool skip = std::any_of(excluded.begin(), excluded.end(),
                                  [&](double e) { return std::abs(r - e) < 0.5 * h; });
    if (skip) {
      if (dropped != nullptr) {
        dropped->push_back(r);
      }
      continue;
    }
    grid.push_back(r);
  }
  return grid;
}

FringeReport analyse(const SampledSignal& signal) {
  FringeReport report;
  report.dominant_frequency = dominant_frequency(signal);
  report.zero_count = count_zeros(signal, kZeroThreshold);
  report.visibility = visibility(signal);
  return report;
}

}  // namespace subrayleigh
