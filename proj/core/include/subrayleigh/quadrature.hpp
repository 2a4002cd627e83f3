#pragma once

#include <vector>

namespace subrayleigh {

/// Nodes and weights of an n-point Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Newton iteration on P_n from the Chebyshev-like initial guess. n >= 1.
GaussLegendreRule gauss_legendre(int n);

/// Composite rule: [lo, hi] split into `panels` equal panels, each carrying
/// the n-point Gauss-Legendre rule. Nodes are returned in increasing order.
GaussLegendreRule composite_gauss_legendre(const GaussLegendreRule& base,
                                           double lo, double hi, int panels);

}  // namespace subrayleigh
