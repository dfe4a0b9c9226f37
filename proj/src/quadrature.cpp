#include "taupsd/quadrature.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

#include "taupsd/errors.hpp"

namespace taupsd {

QuadratureRule gauss_legendre(int n, double a, double b) {
  if (n < 1) throw DomainError("gauss_legendre: need at least one node");
  // Golub-Welsch: eigenpairs of the Jacobi matrix of the Legendre recurrence.
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k < n; ++k) {
    const double beta = k / std::sqrt(4.0 * k * k - 1.0);
    jac(k, k - 1) = beta;
    jac(k - 1, k) = beta;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
  for (int k = 0; k < n; ++k) {
    const double v0 = es.eigenvectors()(0, k);
    rule.nodes[k] = mid + half * es.eigenvalues()(k);
    rule.weights[k] = half * 2.0 * v0 * v0;
  }
  return rule;
}

QuadratureRule composite_gauss_legendre(int panels, int order, double a, double b) {
  if (panels < 1) throw DomainError("composite_gauss_legendre: need at least one panel");
  const QuadratureRule ref = gauss_legendre(order, -1.0, 1.0);
  QuadratureRule rule;
  const double width = (b - a) / panels;
  for (int k = 0; k < panels; ++k) {
    const double lo = a + k * width, mid = lo + 0.5 * width;
    for (int j = 0; j < order; ++j) {
      rule.nodes.push_back(mid + 0.5 * width * ref.nodes[j]);
      rule.weights.push_back(0.5 * width * ref.weights[j]);
    }
  }
  return rule;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw ShapeError("loglog_slope: length mismatch");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int count = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) continue;
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++count;
  }
  if (count < 2) throw NumericalError("loglog_slope: fewer than two positive samples");
  const double denom = count * sxx - sx * sx;
  if (denom == 0.0) throw NumericalError("loglog_slope: degenerate abscissae");
  return (count * sxy - sx * sy) / denom;
}

}  // namespace taupsd
