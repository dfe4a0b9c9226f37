#include "taupsd/grid.hpp"

#include <cmath>
#include <numbers>

#include "taupsd/errors.hpp"

namespace taupsd {

Grid::Grid(int dim, int points_per_axis, double half_width)
    : dim_(dim), n_(points_per_axis), half_width_(half_width) {
  if (dim < 1) throw DomainError("grid dimension must be positive");
  if (points_per_axis < 2 || points_per_axis % 2 != 0)
    throw DomainError("grid points per axis must be a positive even integer");
  if (!(half_width > 0.0) || !std::isfinite(half_width))
    throw DomainError("grid half width must be positive and finite");
  size_ = 1;
  for (int d = 0; d < dim; ++d) size_ *= static_cast<std::size_t>(n_);
}

double Grid::freq_spacing() const { return std::numbers::pi / half_width_; }

double Grid::max_frequency() const { return std::numbers::pi / spacing(); }

double Grid::cell_volume() const { return std::pow(spacing(), dim_); }

double Grid::freq_cell_volume() const { return std::pow(freq_spacing(), dim_); }

MultiIndex Grid::unflatten(std::size_t flat) const {
  MultiIndex idx(dim_);
  for (int d = dim_ - 1; d >= 0; --d) {
    idx[d] = static_cast<int>(flat % n_);
    flat /= n_;
  }
  return idx;
}

std::size_t Grid::flatten(const MultiIndex& idx) const {
  std::size_t flat = 0;
  for (int d = 0; d < dim_; ++d) flat = flat * n_ + static_cast<std::size_t>(idx[d]);
  return flat;
}

Point Grid::point(std::size_t flat) const {
  Point x(dim_);
  for (int d = dim_ - 1; d >= 0; --d) {
    x[d] = node(static_cast<int>(flat % n_));
    flat /= n_;
  }
  return x;
}

Point Grid::freq_point(std::size_t flat) const {
  Point p(dim_);
  for (int d = dim_ - 1; d >= 0; --d) {
    p[d] = frequency(static_cast<int>(flat % n_));
    flat /= n_;
  }
  return p;
}

Grid Grid::dual() const { return Grid(dim_, n_, max_frequency()); }

}  // namespace taupsd
