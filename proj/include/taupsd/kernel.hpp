#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "taupsd/euclid.hpp"
#include "taupsd/fourier.hpp"
#include "taupsd/symbol.hpp"

namespace taupsd {

/// Dense kernel K(x_i, y_j) on a grid (rows x, columns y). The integral
/// operator it represents acts on samples as weight * values.
struct KernelMatrix {
  Grid grid;
  Eigen::MatrixXcd values;
  double weight = 1.0;  // h^n
  std::string tag;
  std::map<std::string, double> params;
  std::optional<Endo> tau;

  Eigen::MatrixXcd operator_matrix() const { return weight * values; }
  /// (sum |K|^2 h^{2n})^{1/2}.
  double hs_norm() const { return weight * values.norm(); }
};

/// s, t > n and n/2 < m < t/2.
struct SmoothingParams {
  double s = 0.0;
  double t = 0.0;
  double m = 0.0;

  /// Throws PreconditionError unless the inequalities hold strictly.
  void validate(int n) const;
  /// The midpoint choice m = (n/2 + t/2) / 2.
  static SmoothingParams midpoint(int n, double s, double t);
};

/// K(x, y) = b(x - y) F^{-1}a((1 - tau) x + tau y) for x - y in the grid
/// window [-L, L)^n, 0 otherwise. F^{-1}a is the trigonometric polynomial
/// of the frequency samples of a, evaluated exactly off the grid.
/// Requires -deg a > n and -deg b > n.
KernelMatrix kernel_ab(const Symbol& a, const Symbol& b, const Endo& tau, const Grid& g);

/// (1 - Lap)^{m/2} applied in x to c(x) K_{a,b}(x, y). Requires tau in U1.
KernelMatrix kernel_k1(const Symbol& a, const Symbol& b, const Symbol& c, const Endo& tau,
                       double m, const Grid& g);

/// (1 - Lap)^{m/2} applied in y to c(y) K_{a,b}(x, y). Requires tau in U0.
KernelMatrix kernel_k0(const Symbol& a, const Symbol& b, const Symbol& c, const Endo& tau,
                       double m, const Grid& g);

/// Spectral multiplier (1 + |p|^2)^{m/2} applied along the x index
/// (columnwise) or the y index (rowwise) of a kernel matrix.
Eigen::MatrixXcd apply_bessel_columns(const Eigen::MatrixXcd& k, double m, const Grid& g);
Eigen::MatrixXcd apply_bessel_rows(const Eigen::MatrixXcd& k, double m, const Grid& g);

/// K_{s,m}(x, y) = <x>^{-s/2} psi_m(x - y) with psi_m the periodic Bessel
/// kernel of the grid; the kernel of <Q>^{-s/2} (1 - Lap)^{-m/2}.
/// Requires s > n and m > n/2.
KernelMatrix smoothing_factor(double s, double m, const Grid& g);

enum class Factorization { U1, U0 };
const char* to_string(Factorization f);

/// Relative Frobenius residual of
///   U1: K = [<Q>^{-s/2} (1 - Lap)^{-m/2}] K^1,  c = <.>^{s/2}
///   U0: K = K^0 [(1 - Lap)^{-m/2} <Q>^{-s/2}],  c = <.>^{s/2}
/// with the bracketed factor assembled from smoothing_factor.
double factorization_check(const Symbol& a, const Symbol& b, const Endo& tau,
                           const SmoothingParams& params, Factorization which, const Grid& g);

struct ContinuityRow {
  Endo tau;
  double distance_to_base;  // ||tau - tau0||
  double hs_distance;       // ||K(tau) - K(tau0)||_HS
};

struct ContinuityScan {
  std::vector<ContinuityRow> rows;
  double slope = 0.0;  // log-log fit of hs_distance against distance_to_base
};

/// HS distances of K^1 (U1) or K^0 (U0) along a path toward tau0. Every
/// tau must lie in the same class set as tau0.
ContinuityScan tau_continuity_scan(const Symbol& a, const Symbol& b, const Symbol& c,
                                   const Endo& tau0, const std::vector<Endo>& path, double m,
                                   Factorization which, const Grid& g);

}  // namespace taupsd
