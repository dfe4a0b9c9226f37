#include "taupsd/schatten.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>

#include "taupsd/errors.hpp"

namespace taupsd {

double schatten_norm(const std::vector<double>& s, double p) {
  if (!(p >= 1.0)) throw DomainError("schatten_norm: requires p >= 1");
  if (s.empty()) return 0.0;
  if (std::isinf(p)) return *std::max_element(s.begin(), s.end());
  // Scale by the largest value to avoid overflow for large p.
  const double top = *std::max_element(s.begin(), s.end());
  if (top == 0.0) return 0.0;
  double acc = 0.0;
  for (double v : s) acc += std::pow(v / top, p);
  return top * std::pow(acc, 1.0 / p);
}

double SchattenReport::norm(double p) const {
  const auto it = p_norms.find(p);
  return it != p_norms.end() ? it->second : schatten_norm(singular_values, p);
}

SchattenReport schatten(const KernelMatrix& k, const std::vector<double>& p_list) {
  for (double p : p_list)
    if (!(p >= 1.0)) throw DomainError("schatten: every p must be >= 1");
  const Eigen::MatrixXcd op = k.operator_matrix();
  if (!op.allFinite()) throw NumericalError("schatten: kernel matrix has non-finite entries");
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(op);
  if (svd.info() != Eigen::Success)
    throw NumericalError("schatten: SVD failed to converge (matrix " + std::to_string(op.rows()) +
                         "x" + std::to_string(op.cols()) + ", Frobenius norm " +
                         std::to_string(op.norm()) + ")");
  SchattenReport r;
  const Eigen::VectorXd sv = svd.singularValues();
  r.singular_values.assign(sv.data(), sv.data() + sv.size());
  std::sort(r.singular_values.begin(), r.singular_values.end(), std::greater<>());
  for (double p : p_list) r.p_norms[p] = schatten_norm(r.singular_values, p);
  r.p_norms[kInfinity] = r.op_norm();
  r.grid = k.grid;
  r.tau = k.tau;
  return r;
}

double monotonicity_violation(const SchattenReport& r) {
  double worst = 0.0;
  for (auto i = r.p_norms.begin(); i != r.p_norms.end(); ++i)
    for (auto j = std::next(i); j != r.p_norms.end(); ++j) {
      const double scale = std::max(i->second, 1e-300);
      worst = std::max(worst, (j->second - i->second) / scale);
    }
  return worst;
}

double log_convexity_violation(const SchattenReport& r) {
  if (r.op_norm() == 0.0) return 0.0;
  double worst = 0.0;
  for (auto i = r.p_norms.begin(); i != r.p_norms.end(); ++i)
    for (auto j = std::next(i); j != r.p_norms.end(); ++j) {
      const double theta = 0.5 * (1.0 / i->first + 1.0 / j->first);
      const double pmid = theta == 0.0 ? kInfinity : 1.0 / theta;
      const double mid = std::log(schatten_norm(r.singular_values, pmid));
      const double chord = 0.5 * (std::log(i->second) + std::log(j->second));
      worst = std::max(worst, mid - chord);
    }
  return worst;
}

}  // namespace taupsd
