#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Core>

namespace taupsd {

using cplx = std::complex<double>;
using Point = Eigen::VectorXd;
using MultiIndex = std::vector<int>;

/// Uniform truncated grid on [-L, L)^n with N points per axis.
///
/// Space nodes are x_k = -L + k h, h = 2L/N. The dual frequency nodes are
/// p_j = (j - N/2) dp with dp = pi/L, covering [-pi/h, pi/h). Points are
/// flattened row-major: the last axis varies fastest.
class Grid {
 public:
  Grid() = default;
  Grid(int dim, int points_per_axis, double half_width);

  int dim() const { return dim_; }
  int points_per_axis() const { return n_; }
  double half_width() const { return half_width_; }
  double spacing() const { return 2.0 * half_width_ / n_; }
  double freq_spacing() const;
  /// pi/h, the (excluded) upper end of the frequency window.
  double max_frequency() const;
  std::size_t size() const { return size_; }

  double node(int k) const { return -half_width_ + k * spacing(); }
  double frequency(int j) const { return (j - n_ / 2) * freq_spacing(); }

  /// Cell volume h^n.
  double cell_volume() const;
  /// Frequency cell volume dp^n.
  double freq_cell_volume() const;

  MultiIndex unflatten(std::size_t flat) const;
  std::size_t flatten(const MultiIndex& idx) const;

  Point point(std::size_t flat) const;
  Point freq_point(std::size_t flat) const;

  /// The frequency grid viewed as a space grid of its own: N points on
  /// [-pi/h, pi/h). Its dual is again this grid.
  Grid dual() const;

  bool operator==(const Grid& other) const = default;

 private:
  int dim_ = 1;
  int n_ = 2;
  double half_width_ = 1.0;
  std::size_t size_ = 2;
};

}  // namespace taupsd
