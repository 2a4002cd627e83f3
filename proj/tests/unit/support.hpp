#pragma once

#include <algorithm>
#include <cmath>
#include <random>

#include "subrayleigh/geometry.hpp"

namespace subrayleigh::testing {

inline Geometry default_geometry() { return Geometry(500e-9, 0.1, 1.0, 1.0); }
inline Aperture default_rect() { return Aperture::rect(20e-6, 20e-6); }

inline double rel_diff(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

// Fixed-seed generator so property tests are reproducible.
inline std::mt19937_64& rng() {
  static std::mt19937_64 engine(0x5eed);
  return engine;
}

inline double uniform(double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng());
}

}  // namespace subrayleigh::testing
