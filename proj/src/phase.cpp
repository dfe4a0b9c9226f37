#include "taupsd/phase.hpp"

#include <cmath>
#include <numbers>

#include "taupsd/errors.hpp"

namespace taupsd {

std::vector<int> PhaseSymbol::shape() const {
  return std::vector<int>(2 * grid_x.dim(), grid_x.points_per_axis());
}

double PhaseSymbol::cell_volume() const {
  return grid_x.cell_volume() * grid_x.freq_cell_volume();
}

std::vector<int> PhaseSymbol::groups() const {
  return decomposition.empty() ? std::vector<int>{grid_x.dim()} : decomposition;
}

PhaseSymbol sample_phase(const Grid& g, const PhaseFn& f, std::vector<int> decomposition) {
  int total = 0;
  for (int d : decomposition) {
    if (d < 1) throw ShapeError("sample_phase: group dimensions must be positive");
    total += d;
  }
  if (!decomposition.empty() && total != g.dim())
    throw ShapeError("sample_phase: decomposition does not sum to the dimension");
  PhaseSymbol a{g, std::vector<cplx>(g.size() * g.size()), std::move(decomposition)};
  const auto size = static_cast<std::ptrdiff_t>(g.size());
#pragma omp parallel for
  for (std::ptrdiff_t i = 0; i < size; ++i) {
    const Point x = g.point(i);
    for (std::size_t j = 0; j < g.size(); ++j) a.values[i * g.size() + j] = f(x, g.freq_point(j));
  }
  return a;
}

double lp_norm(const PhaseSymbol& a, double p) {
  if (std::isinf(p)) {
    double m = 0.0;
    for (const cplx& v : a.values) m = std::max(m, std::abs(v));
    return m;
  }
  if (!(p >= 1.0)) throw DomainError("lp_norm: requires p >= 1");
  double s = 0.0;
  for (const cplx& v : a.values) s += std::pow(std::abs(v), p);
  return std::pow(s * a.cell_volume(), 1.0 / p);
}

PhaseSymbol product_phase_symbol(const Symbol& a, const Symbol& b, const Grid& g) {
  const GridFunction ia = inverse_fft(sample(g, Side::Frequency, [&](const Point& p) { return a(p); }));
  const GridFunction fb = forward_fft(sample(g, Side::Space, [&](const Point& x) { return b(x); }));
  PhaseSymbol out{g, std::vector<cplx>(g.size() * g.size()), {}};
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j) out.values[i * g.size() + j] = ia.values[i] * fb.values[j];
  return out;
}

namespace {

std::vector<AxisTransform> x_axes(const Grid& g) {
  std::vector<AxisTransform> axes;
  for (int a = 0; a < g.dim(); ++a) axes.push_back({a, g.half_width()});
  return axes;
}

// The p axes are transformed as space axes of the dual grid.
std::vector<AxisTransform> p_axes(const Grid& g) {
  std::vector<AxisTransform> axes;
  for (int a = 0; a < g.dim(); ++a) axes.push_back({g.dim() + a, g.max_frequency()});
  return axes;
}

}  // namespace

KernelMatrix quantize(const PhaseSymbol& a, const Endo& tau) {
  const Grid& g = a.grid_x;
  const int n = g.dim(), N = g.points_per_axis();
  const std::size_t size = g.size();
  if (a.values.size() != size * size) throw ShapeError("quantize: symbol size does not match grid");
  if (tau.dim() != n) throw ShapeError("quantize: tau dimension does not match grid");

  // (id x F^{-1}) in p: G(x_k, u_d); then F in x: C(p_j, u_d).
  std::vector<cplx> work = a.values;
  const std::vector<int> shape = a.shape();
  // Inverse along p: the p axes carry frequency samples of the window [-L, L).
  std::vector<AxisTransform> pinv;
  for (int ax = 0; ax < n; ++ax) pinv.push_back({n + ax, g.half_width()});
  transform_axes(work, shape, pinv, Direction::Inverse);
  transform_axes(work, shape, x_axes(g), Direction::Forward);
  // Regroup so that each u-slice of coefficients is contiguous: coeffs[d][j].
  std::vector<cplx> coeffs(size * size);
  for (std::size_t j = 0; j < size; ++j)
    for (std::size_t d = 0; d < size; ++d) coeffs[d * size + j] = work[j * size + d];

  KernelMatrix out;
  out.grid = g;
  out.values = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(size), static_cast<Eigen::Index>(size));
  out.weight = g.cell_volume();
  out.tag = "quantize";
  out.tau = tau;
  const double scale = std::pow(g.freq_spacing() / (2.0 * std::numbers::pi), n);
  const Eigen::MatrixXd one_minus = Eigen::MatrixXd::Identity(n, n) - tau.matrix;
  const auto isize = static_cast<std::ptrdiff_t>(size);
#pragma omp parallel
  {
    std::vector<cplx> phases(static_cast<std::size_t>(n) * N);
    std::vector<cplx> scratch(std::max<std::size_t>(1, size / N));
    MultiIndex k(n);
#pragma omp for schedule(static)
    for (std::ptrdiff_t j = 0; j < isize; ++j) {
      const MultiIndex jj = g.unflatten(j);
      const Point ty = tau.matrix * g.point(j);
      for (std::ptrdiff_t i = 0; i < isize; ++i) {
        const MultiIndex ii = g.unflatten(i);
        bool inside = true;
        for (int ax = 0; ax < n; ++ax) {
          const int d = ii[ax] - jj[ax];
          if (d < -N / 2 || d >= N / 2) inside = false;
          k[ax] = d + N / 2;
        }
        if (!inside) continue;
        const Point v = one_minus * g.point(i) + ty;
        for (int ax = 0; ax < n; ++ax)
          phase_vector(v[ax], N, g.half_width(), std::span<cplx>(phases).subspan(ax * N, N));
        const std::span<const cplx> slice(coeffs.data() + g.flatten(k) * size, size);
        out.values(i, j) = scale * contract_phases(slice, n, N, phases, scratch);
      }
    }
  }
  return out;
}

PhaseSymbol apply_phase_multiplier(const PhaseSymbol& a,
                                   const std::function<double(const Point&, const Point&)>& mult) {
  const Grid& g = a.grid_x;
  const std::size_t size = g.size();
  PhaseSymbol out = a;
  std::vector<AxisTransform> axes = x_axes(g);
  for (const auto& ax : p_axes(g)) axes.push_back(ax);
  const std::vector<int> shape = a.shape();
  transform_axes(out.values, shape, axes, Direction::Forward);
  // After the transform the x axes carry xi (dual of x, spacing pi/L) and
  // the p axes carry eta (dual of p, spacing h).
  const Grid gp = g.dual();
  const auto isize = static_cast<std::ptrdiff_t>(size);
#pragma omp parallel for
  for (std::ptrdiff_t i = 0; i < isize; ++i) {
    const Point xi = g.freq_point(i);
    for (std::size_t j = 0; j < size; ++j) out.values[i * size + j] *= mult(xi, gp.freq_point(j));
  }
  transform_axes(out.values, shape, axes, Direction::Inverse);
  return out;
}

PhaseSymbol phase_derivative(const PhaseSymbol& a, const MultiIndex& alpha, const MultiIndex& beta) {
  const int n = a.grid_x.dim();
  if (static_cast<int>(alpha.size()) != n || static_cast<int>(beta.size()) != n)
    throw ShapeError("phase_derivative: multi-index dimension mismatch");
  if (order(alpha) == 0 && order(beta) == 0) return a;
  const Grid& g = a.grid_x;
  const std::size_t size = g.size();
  PhaseSymbol out = a;
  std::vector<AxisTransform> axes = x_axes(g);
  for (const auto& ax : p_axes(g)) axes.push_back(ax);
  const std::vector<int> shape = a.shape();
  transform_axes(out.values, shape, axes, Direction::Forward);
  const Grid gp = g.dual();
  const auto isize = static_cast<std::ptrdiff_t>(size);
#pragma omp parallel for
  for (std::ptrdiff_t i = 0; i < isize; ++i) {
    const Point xi = g.freq_point(i);
    for (std::size_t j = 0; j < size; ++j) {
      const Point eta = gp.freq_point(j);
      cplx f = 1.0;
      for (int ax = 0; ax < n; ++ax) {
        f *= std::pow(cplx(0.0, xi[ax]), alpha[ax]) * std::pow(cplx(0.0, eta[ax]), beta[ax]);
      }
      out.values[i * size + j] *= f;
    }
  }
  transform_axes(out.values, shape, axes, Direction::Inverse);
  return out;
}

}  // namespace taupsd
