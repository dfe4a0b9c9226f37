#pragma once

#include <limits>
#include <map>
#include <optional>
#include <vector>

#include "taupsd/kernel.hpp"

namespace taupsd {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct SchattenReport {
  std::vector<double> singular_values;  // non-increasing
  std::map<double, double> p_norms;     // p -> (sum s^p)^{1/p}; key infinity -> s_1
  Grid grid;
  std::optional<Endo> tau;

  double op_norm() const { return singular_values.empty() ? 0.0 : singular_values.front(); }
  double norm(double p) const;
};

/// Singular values of the operator matrix h^n K (Eigen's divide-and-conquer
/// SVD) and the requested p-norms. Throws DomainError for p < 1 and
/// NumericalError when the decomposition fails.
SchattenReport schatten(const KernelMatrix& k, const std::vector<double>& p_list);

/// (sum s^p)^{1/p} for p >= 1; the max for p = infinity.
double schatten_norm(const std::vector<double>& singular_values, double p);

/// Largest relative increase norm(p2) - norm(p1) over p1 < p2 in the report
/// (0 when the norms are non-increasing in p).
double monotonicity_violation(const SchattenReport& r);

/// Largest violation of log-convexity in 1/p: for each pair p0 < p1 of
/// reported exponents, log N(p_mid) - (log N(p0) + log N(p1)) / 2 with
/// 1/p_mid = (1/p0 + 1/p1)/2, clipped at 0.
double log_convexity_violation(const SchattenReport& r);

}  // namespace taupsd
