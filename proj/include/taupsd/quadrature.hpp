#pragma once

#include <vector>

namespace taupsd {

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss-Legendre rule on [a, b].
QuadratureRule gauss_legendre(int n, double a, double b);

/// Composite Gauss-Legendre rule: `panels` equal panels of `order` nodes.
QuadratureRule composite_gauss_legendre(int panels, int order, double a, double b);

/// Least-squares slope of log(y) against log(x) over pairs with y > 0.
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace taupsd
