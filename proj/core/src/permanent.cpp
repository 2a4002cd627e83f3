#include "subrayleigh/permanent.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace subrayleigh {

using Complex = std::complex<double>;

AmplitudeMatrix::AmplitudeMatrix(std::size_t n)
    : n_(n), entries_(n * n, Complex(0.0, 0.0)) {
  if (n == 0) {
    throw std::invalid_argument("amplitude matrix must be at least 1x1");
  }
}

AmplitudeMatrix::AmplitudeMatrix(std::size_t n, std::vector<Complex> entries)
    : n_(n), entries_(std::move(entries)) {
  if (n == 0) {
    throw std::invalid_argument("amplitude matrix must be at least 1x1");
  }
  if (entries_.size() != n * n) {
    throw std::invalid_argument("amplitude matrix must be square");
  }
  for (const auto& e : entries_) {
    if (!std::isfinite(e.real()) || !std::isfinite(e.imag())) {
      throw std::invalid_argument("amplitude matrix entry is not finite");
    }
  }
}

namespace {

void guard_size(const AmplitudeMatrix& m) {
  if (m.size() > kMaxPermanentSize) {
    throw std::length_error("permanent limited to matrices up to 12x12");
  }
}

}  // namespace

Complex permanent_by_enumeration(const AmplitudeMatrix& m) {
  guard_size(m);
  const std::size_t n = m.size();
  std::vector<std::size_t> sigma(n);
  std::iota(sigma.begin(), sigma.end(), std::size_t{0});
  Complex total(0.0, 0.0);
  do {
    Complex term(1.0, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      term *= m(i, sigma[i]);
    }
    total += term;
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return total;
}

Complex permanent_by_ryser(const AmplitudeMatrix& m) {
  guard_size(m);
  const std::size_t n = m.size();
  // perm(A) = (-1)^n sum_{S != {}} (-1)^{|S|} prod_i sum_{j in S} a_ij,
  // visiting subsets in Gray-code order so each step adds or removes a column.
  std::vector<Complex> row_sums(n, Complex(0.0, 0.0));
  Complex total(0.0, 0.0);
  const std::uint32_t subsets = std::uint32_t{1} << n;
  std::uint32_t gray = 0;
  for (std::uint32_t g = 1; g < subsets; ++g) {
    const int col = std::countr_zero(g);
    const std::uint32_t bit = std::uint32_t{1} << col;
    const bool adding = (gray & bit) == 0;
    gray ^= bit;
    for (std::size_t i = 0; i < n; ++i) {
      if (adding) {
        row_sums[i] += m(i, col);
      } else {
        row_sums[i] -= m(i, col);
      }
    }
    Complex product(1.0, 0.0);
    for (const auto& s : row_sums) {
      product *= s;
    }
    if (std::popcount(gray) % 2 == 0) {
      total += product;
    } else {
      total -= product;
    }
  }
  return (n % 2 == 0) ? total : -total;
}

Complex permanent(const AmplitudeMatrix& m) {
  return m.size() <= 6 ? permanent_by_enumeration(m) : permanent_by_ryser(m);
}

}  // namespace subrayleigh
