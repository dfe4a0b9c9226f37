#include "taupsd/reference.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/SVD>

#include "taupsd/errors.hpp"

namespace taupsd::reference {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

cplx expi(double phase) { return {std::cos(phase), std::sin(phase)}; }

}  // namespace

GridFunction direct_forward(const GridFunction& f) {
  if (f.side != Side::Space) throw DomainError("direct_forward: expects a space-side function");
  const Grid& g = f.grid;
  GridFunction out(g, Side::Frequency);
  for (std::size_t j = 0; j < g.size(); ++j) {
    const Point p = g.freq_point(j);
    cplx s = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) s += f.values[k] * expi(-g.point(k).dot(p));
    out.values[j] = s * g.cell_volume();
  }
  return out;
}

GridFunction direct_inverse(const GridFunction& spec) {
  if (spec.side != Side::Frequency) throw DomainError("direct_inverse: expects a frequency-side function");
  const Grid& g = spec.grid;
  GridFunction out(g, Side::Space);
  for (std::size_t k = 0; k < g.size(); ++k) out.values[k] = inverse_at(spec, g.point(k));
  return out;
}

cplx inverse_at(const GridFunction& spec, const Point& v) {
  const Grid& g = spec.grid;
  cplx s = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j) s += spec.values[j] * expi(v.dot(g.freq_point(j)));
  return s * g.freq_cell_volume() / std::pow(kTwoPi, g.dim());
}

KernelMatrix kernel_ab(const Symbol& a, const Symbol& b, const Endo& tau, const Grid& g) {
  const int n = g.dim();
  const double L = g.half_width();
  GridFunction spec(g, Side::Frequency);
  for (std::size_t j = 0; j < g.size(); ++j) spec.values[j] = a(g.freq_point(j));
  const auto size = static_cast<Eigen::Index>(g.size());
  KernelMatrix out;
  out.grid = g;
  out.values = Eigen::MatrixXcd::Zero(size, size);
  out.weight = g.cell_volume();
  out.tag = "kernel_ab";
  out.tau = tau;
  const Eigen::MatrixXd one_minus = Eigen::MatrixXd::Identity(n, n) - tau.matrix;
  for (Eigen::Index i = 0; i < size; ++i)
    for (Eigen::Index j = 0; j < size; ++j) {
      const Point x = g.point(i), y = g.point(j);
      const Point u = x - y;
      // Window: every component of x - y in [-L, L).
      if ((u.array() < -L - 1e-9 * L).any() || (u.array() >= L - 1e-9 * L).any()) continue;
      out.values(i, j) = b(u) * inverse_at(spec, one_minus * x + tau.matrix * y);
    }
  return out;
}

KernelMatrix quantize(const PhaseSymbol& a, const Endo& tau) {
  const Grid& g = a.grid_x;
  const int n = g.dim();
  const std::size_t size = g.size();
  const double wp = g.freq_cell_volume() / std::pow(kTwoPi, n);
  // G(x_k, u_d) = (dp/2pi)^n sum_j a(x_k, p_j) e^{i u_d p_j}
  std::vector<cplx> G(size * size);
  for (std::size_t k = 0; k < size; ++k)
    for (std::size_t d = 0; d < size; ++d) {
      const Point u = g.point(d);
      cplx s = 0.0;
      for (std::size_t j = 0; j < size; ++j) s += a.values[k * size + j] * expi(u.dot(g.freq_point(j)));
      G[k * size + d] = wp * s;
    }
  // Coefficients C(p_j, u_d) = h^n sum_k G(x_k, u_d) e^{-i x_k p_j}
  std::vector<cplx> C(size * size);
  for (std::size_t j = 0; j < size; ++j)
    for (std::size_t d = 0; d < size; ++d) {
      const Point p = g.freq_point(j);
      cplx s = 0.0;
      for (std::size_t k = 0; k < size; ++k) s += G[k * size + d] * expi(-g.point(k).dot(p));
      C[j * size + d] = g.cell_volume() * s;
    }
  KernelMatrix out;
  out.grid = g;
  out.values = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(size), static_cast<Eigen::Index>(size));
  out.weight = g.cell_volume();
  out.tag = "quantize";
  out.tau = tau;
  const Eigen::MatrixXd one_minus = Eigen::MatrixXd::Identity(n, n) - tau.matrix;
  const int N = g.points_per_axis();
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t jy = 0; jy < size; ++jy) {
      const MultiIndex ii = g.unflatten(i), jj = g.unflatten(jy);
      MultiIndex k(n);
      bool inside = true;
      for (int ax = 0; ax < n; ++ax) {
        const int d = ii[ax] - jj[ax];
        if (d < -N / 2 || d >= N / 2) inside = false;
        k[ax] = d + N / 2;
      }
      if (!inside) continue;
      const std::size_t d = g.flatten(k);
      const Point v = one_minus * g.point(i) + tau.matrix * g.point(jy);
      cplx s = 0.0;
      for (std::size_t j = 0; j < size; ++j) s += C[j * size + d] * expi(v.dot(g.freq_point(j)));
      out.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(jy)) = wp * s;
    }
  return out;
}

std::vector<double> singular_values(const KernelMatrix& k) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(k.operator_matrix());
  const Eigen::VectorXd sv = svd.singularValues();
  std::vector<double> out(sv.data(), sv.data() + sv.size());
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

}  // namespace taupsd::reference
