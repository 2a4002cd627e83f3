#include "subrayleigh/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace subrayleigh {

GaussLegendreRule gauss_legendre(int n) {
  if (n < 1) {
    throw std::invalid_argument("Gauss-Legendre order must be >= 1");
  }
  GaussLegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int half = (n + 1) / 2;
  // P_n(z) and P_n'(z) by the three-term recurrence.
  auto legendre = [n](double z) {
    double p1 = 1.0;
    double p2 = 0.0;
    for (int j = 1; j <= n; ++j) {
      const double p3 = p2;
      p2 = p1;
      p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
    }
    return std::pair{p1, n * (z * p1 - p2) / (z * z - 1.0)};
  };
  for (int i = 0; i < half; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      const auto [p, dp] = legendre(z);
      const double step = p / dp;
      z -= step;
      if (std::abs(step) <= 1e-16) {
        break;
      }
    }
    const double derivative = legendre(z).second;
    const double w = 2.0 / ((1.0 - z * z) * derivative * derivative);
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) {
    rule.nodes[n / 2] = 0.0;
  }
  return rule;
}

GaussLegendreRule composite_gauss_legendre(const GaussLegendreRule& base,
                                           double lo, double hi, int panels) {
  if (panels < 1) {
    throw std::invalid_argument("composite rule needs at least one panel");
  }
  if (!(lo < hi) || !std::isfinite(lo) || !std::isfinite(hi)) {
    throw std::invalid_argument("composite rule needs a finite lo < hi");
  }
  GaussLegendreRule out;
  const std::size_t n = base.nodes.size();
  out.nodes.reserve(n * panels);
  out.weights.reserve(n * panels);
  const double width = (hi - lo) / panels;
  for (int p = 0; p < panels; ++p) {
    const double centre = lo + (p + 0.5) * width;
    const double half = 0.5 * width;
    for (std::size_t i = 0; i < n; ++i) {
      out.nodes.push_back(centre + half * base.nodes[i]);
      out.weights.push_back(half * base.weights[i]);
    }
  }
  return out;
}

}  // namespace subrayleigh
