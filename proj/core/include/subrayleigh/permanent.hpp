#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace subrayleigh {

/// Square matrix of field amplitudes, entry (i, j) = U(detector_i, emitter_j).
class AmplitudeMatrix {
 public:
  /// n x n zero matrix, n >= 1.
  explicit AmplitudeMatrix(std::size_t n);
  /// Row-major entries; size must be n*n and every entry finite.
  AmplitudeMatrix(std::size_t n, std::vector<std::complex<double>> entries);

  std::size_t size() const noexcept { return n_; }

  std::complex<double>& operator()(std::size_t row, std::size_t col) {
    return entries_[row * n_ + col];
  }
  const std::complex<double>& operator()(std::size_t row,
                                         std::size_t col) const {
    return entries_[row * n_ + col];
  }

 private:
  std::size_t n_;
  std::vector<std::complex<double>> entries_;
};

/// Largest matrix any permanent routine accepts.
inline constexpr std::size_t kMaxPermanentSize = 12;

/// Sum over all n! permutations. Throws std::length_error above
/// kMaxPermanentSize.
std::complex<double> permanent_by_enumeration(const AmplitudeMatrix& m);

/// Ryser inclusion-exclusion with Gray-code subset order, O(2^n n).
std::complex<double> permanent_by_ryser(const AmplitudeMatrix& m);

/// Enumeration up to n = 6, Ryser above.
std::complex<double> permanent(const AmplitudeMatrix& m);

}  // namespace subrayleigh
