#include "taupsd/kernel.hpp"

#include <cmath>
#include <numbers>

#include "taupsd/errors.hpp"
#include "taupsd/quadrature.hpp"
#include "taupsd/sobolev.hpp"

namespace taupsd {

void SmoothingParams::validate(int n) const {
  if (!(s > n)) throw PreconditionError("SmoothingParams: requires s > n");
  if (!(t > n)) throw PreconditionError("SmoothingParams: requires t > n");
  if (!(m > n / 2.0 && m < t / 2.0)) throw PreconditionError("SmoothingParams: requires n/2 < m < t/2");
}

SmoothingParams SmoothingParams::midpoint(int n, double s, double t) {
  SmoothingParams p{s, t, (n / 2.0 + t / 2.0) / 2.0};
  p.validate(n);
  return p;
}

const char* to_string(Factorization f) { return f == Factorization::U1 ? "U1" : "U0"; }

namespace {

// Evaluates F^{-1}a at arbitrary points from frequency samples; one
// instance per thread.
class OffGridInverse {
 public:
  explicit OffGridInverse(const GridFunction& spectrum)
      : spec_(spectrum),
        n_(spectrum.grid.points_per_axis()),
        phases_(static_cast<std::size_t>(spectrum.grid.dim()) * n_),
        scratch_(std::max<std::size_t>(1, spectrum.grid.size() / n_)),
        scale_(std::pow(spectrum.grid.freq_spacing() / (2.0 * std::numbers::pi),
                        spectrum.grid.dim())) {}

  cplx operator()(const Point& v) {
    const int dim = spec_.grid.dim();
    for (int a = 0; a < dim; ++a)
      phase_vector(v[a], n_, spec_.grid.half_width(), std::span<cplx>(phases_).subspan(a * n_, n_));
    return scale_ * contract_phases(spec_.values, dim, n_, phases_, scratch_);
  }

 private:
  const GridFunction& spec_;
  int n_;
  std::vector<cplx> phases_;
  std::vector<cplx> scratch_;
  double scale_;
};

void check_tau(const Endo& tau, const Grid& g) {
  if (tau.dim() != g.dim()) throw ShapeError("kernel: tau dimension does not match grid");
}

// Lattice difference i - j per axis, or false when it leaves [-N/2, N/2).
bool window_difference(const MultiIndex& i, const MultiIndex& j, int N, MultiIndex& d) {
  for (std::size_t a = 0; a < i.size(); ++a) {
    d[a] = i[a] - j[a];
    if (d[a] < -N / 2 || d[a] >= N / 2) return false;
  }
  return true;
}

Eigen::MatrixXcd apply_bessel_axes(const Eigen::MatrixXcd& k, double m, const Grid& g, bool columns) {
  const int n = g.dim(), N = g.points_per_axis();
  const auto size = static_cast<int>(g.size());
  if (k.rows() != size || k.cols() != size) throw ShapeError("apply_bessel: matrix size mismatch");
  if (m == 0.0) return k;
  Eigen::MatrixXcd out = k;
  std::span<cplx> data(out.data(), static_cast<std::size_t>(out.size()));
  // Column-major storage: element (i, j) at i + j * size. Columns: shape
  // [size, N..N] transforming the trailing axes; rows: [N..N, size].
  std::vector<int> shape;
  std::vector<AxisTransform> axes;
  if (columns) shape.push_back(size);
  for (int a = 0; a < n; ++a) {
    axes.push_back({static_cast<int>(shape.size()), g.half_width()});
    shape.push_back(N);
  }
  if (!columns) shape.push_back(size);
  transform_axes(data, shape, axes, Direction::Forward);
  std::vector<double> mult(g.size());
  for (std::size_t f = 0; f < g.size(); ++f)
    mult[f] = std::pow(1.0 + g.freq_point(f).squaredNorm(), m / 2.0);
#pragma omp parallel for
  for (int j = 0; j < size; ++j)
    for (int i = 0; i < size; ++i) out(i, j) *= mult[columns ? i : j];
  transform_axes(data, shape, axes, Direction::Inverse);
  return out;
}

}  // namespace

Eigen::MatrixXcd apply_bessel_columns(const Eigen::MatrixXcd& k, double m, const Grid& g) {
  return apply_bessel_axes(k, m, g, true);
}

Eigen::MatrixXcd apply_bessel_rows(const Eigen::MatrixXcd& k, double m, const Grid& g) {
  return apply_bessel_axes(k, m, g, false);
}

KernelMatrix kernel_ab(const Symbol& a, const Symbol& b, const Endo& tau, const Grid& g) {
  check_tau(tau, g);
  const int n = g.dim(), N = g.points_per_axis();
  if (!(-a.degree() > n)) throw PreconditionError("kernel_ab: requires a in S^{-t} with t > n");
  if (!(-b.degree() > n)) throw PreconditionError("kernel_ab: requires b in S^{-s} with s > n");
  const GridFunction spec = sample(g, Side::Frequency, [&](const Point& p) { return a(p); });
  // b on the difference lattice u = d h, d in [-N/2, N/2)^n, i.e. on the grid nodes.
  const GridFunction bu = sample(g, Side::Space, [&](const Point& u) { return b(u); });

  const auto size = static_cast<Eigen::Index>(g.size());
  KernelMatrix out;
  out.grid = g;
  out.values = Eigen::MatrixXcd::Zero(size, size);
  out.weight = g.cell_volume();
  out.tag = "kernel_ab";
  out.tau = tau;
  const Eigen::MatrixXd one_minus = Eigen::MatrixXd::Identity(n, n) - tau.matrix;
#pragma omp parallel
  {
    OffGridInverse inv(spec);
    MultiIndex d(n), k(n);
#pragma omp for schedule(static)
    for (Eigen::Index j = 0; j < size; ++j) {
      const MultiIndex jj = g.unflatten(j);
      const Point y = g.point(j);
      const Point ty = tau.matrix * y;
      for (Eigen::Index i = 0; i < size; ++i) {
        const MultiIndex ii = g.unflatten(i);
        if (!window_difference(ii, jj, N, d)) continue;
        for (int ax = 0; ax < n; ++ax) k[ax] = d[ax] + N / 2;
        const cplx bval = bu.values[g.flatten(k)];
        if (bval == 0.0) continue;
        const Point v = one_minus * g.point(i) + ty;
        out.values(i, j) = bval * inv(v);
      }
    }
  }
  return out;
}

namespace {

Eigen::VectorXcd sample_on_nodes(const Symbol& c, const Grid& g) {
  Eigen::VectorXcd out(static_cast<Eigen::Index>(g.size()));
  for (std::size_t k = 0; k < g.size(); ++k) out[static_cast<Eigen::Index>(k)] = c(g.point(k));
  return out;
}

}  // namespace

KernelMatrix kernel_k1(const Symbol& a, const Symbol& b, const Symbol& c, const Endo& tau,
                       double m, const Grid& g) {
  if (!tau.in_u1())
    throw ClassificationError(std::string("kernel_k1: tau must lie in U1, got ") + to_string(tau.cls));
  KernelMatrix k = kernel_ab(a, b, tau, g);
  const Eigen::VectorXcd cx = sample_on_nodes(c, g);
  k.values = apply_bessel_columns(cx.asDiagonal() * k.values, m, g);
  k.tag = "kernel_k1";
  k.params["m"] = m;
  return k;
}

KernelMatrix kernel_k0(const Symbol& a, const Symbol& b, const Symbol& c, const Endo& tau,
                       double m, const Grid& g) {
  if (!tau.in_u0())
    throw ClassificationError(std::string("kernel_k0: tau must lie in U0, got ") + to_string(tau.cls));
  KernelMatrix k = kernel_ab(a, b, tau, g);
  const Eigen::VectorXcd cy = sample_on_nodes(c, g);
  k.values = apply_bessel_rows(k.values * cy.asDiagonal(), m, g);
  k.tag = "kernel_k0";
  k.params["m"] = m;
  return k;
}

KernelMatrix smoothing_factor(double s, double m, const Grid& g) {
  const int n = g.dim(), N = g.points_per_axis();
  if (!(s > n)) throw PreconditionError("smoothing_factor: requires s > n");
  if (!(m > n / 2.0)) throw PreconditionError("smoothing_factor: requires m > n/2");
  const GridFunction psi = bessel_kernel(m, g);
  const auto size = static_cast<Eigen::Index>(g.size());
  KernelMatrix out;
  out.grid = g;
  out.values.resize(size, size);
  out.weight = g.cell_volume();
  out.tag = "smoothing_factor";
  out.params = {{"s", s}, {"m", m}};
#pragma omp parallel for
  for (Eigen::Index j = 0; j < size; ++j) {
    const MultiIndex jj = g.unflatten(j);
    MultiIndex k(n);
    for (Eigen::Index i = 0; i < size; ++i) {
      const MultiIndex ii = g.unflatten(i);
      for (int a = 0; a < n; ++a) k[a] = ((ii[a] - jj[a]) % N + N + N / 2) % N;
      out.values(i, j) = std::pow(bracket(g.point(i)), -s / 2.0) * psi.values[g.flatten(k)];
    }
  }
  return out;
}

double factorization_check(const Symbol& a, const Symbol& b, const Endo& tau,
                           const SmoothingParams& params, Factorization which, const Grid& g) {
  params.validate(g.dim());
  const Symbol c = bracket_power_symbol(params.s / 2.0);
  const KernelMatrix plain = kernel_ab(a, b, tau, g);
  const Eigen::MatrixXcd factor = smoothing_factor(params.s, params.m, g).operator_matrix();
  Eigen::MatrixXcd rhs;
  if (which == Factorization::U1) {
    rhs = factor * kernel_k1(a, b, c, tau, params.m, g).values;
  } else {
    rhs = kernel_k0(a, b, c, tau, params.m, g).values * factor.adjoint();
  }
  const double denom = plain.values.norm();
  const double diff = (plain.values - rhs).norm();
  return denom > 0.0 ? diff / denom : diff;
}

ContinuityScan tau_continuity_scan(const Symbol& a, const Symbol& b, const Symbol& c,
                                   const Endo& tau0, const std::vector<Endo>& path, double m,
                                   Factorization which, const Grid& g) {
  auto build = [&](const Endo& tau) {
    return which == Factorization::U1 ? kernel_k1(a, b, c, tau, m, g) : kernel_k0(a, b, c, tau, m, g);
  };
  for (const Endo& tau : path) {
    const bool ok = which == Factorization::U1 ? tau.in_u1() : tau.in_u0();
    if (!ok)
      throw ClassificationError(std::string("tau_continuity_scan: path leaves ") + to_string(which));
  }
  const KernelMatrix base = build(tau0);
  ContinuityScan scan;
  std::vector<double> xs, ys;
  for (const Endo& tau : path) {
    const KernelMatrix k = build(tau);
    const double dist = operator_norm(tau.matrix - tau0.matrix);
    const double hs = base.weight * (k.values - base.values).norm();
    scan.rows.push_back({tau, dist, hs});
    xs.push_back(dist);
    ys.push_back(hs);
  }
  int usable = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) usable += (xs[i] > 0.0 && ys[i] > 0.0);
  scan.slope = usable >= 2 ? loglog_slope(xs, ys) : 0.0;
  return scan;
}

}  // namespace taupsd
