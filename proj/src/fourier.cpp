#include "taupsd/fourier.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>

#include <fftw3.h>

#include "taupsd/errors.hpp"

namespace taupsd {

namespace {

// The FFTW planner is not re-entrant; execution of distinct plans is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

// (-1)^k
inline double alt(int k) { return (k & 1) ? -1.0 : 1.0; }

}  // namespace

const char* to_string(Side s) { return s == Side::Space ? "space" : "frequency"; }

GridFunction::GridFunction(Grid g, std::vector<cplx> v, Side s)
    : grid(g), values(std::move(v)), side(s) {
  if (values.size() != grid.size()) throw ShapeError("GridFunction: value count != N^n");
}

GridFunction sample(const Grid& g, Side side, const std::function<cplx(const Point&)>& f) {
  GridFunction out(g, side);
  const auto total = static_cast<std::ptrdiff_t>(g.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t k = 0; k < total; ++k) out.values[k] = f(out.node(static_cast<std::size_t>(k)));
  return out;
}

void transform_axes(std::span<cplx> data, std::span<const int> shape,
                    std::span<const AxisTransform> axes, Direction dir) {
  const int rank = static_cast<int>(shape.size());
  std::vector<std::ptrdiff_t> stride(rank, 1);
  for (int a = rank - 2; a >= 0; --a) stride[a] = stride[a + 1] * shape[a + 1];
  std::size_t total = 1;
  for (int s : shape) total *= static_cast<std::size_t>(s);
  if (total != data.size()) throw ShapeError("transform_axes: data size does not match shape");
  if (axes.empty()) return;

  std::vector<bool> selected(rank, false);
  for (const auto& ax : axes) {
    if (ax.axis < 0 || ax.axis >= rank) throw ShapeError("transform_axes: axis out of range");
    if (shape[ax.axis] % 2 != 0) throw ShapeError("transform_axes: axis length must be even");
    selected[ax.axis] = true;
  }

  // Pre-modulation: forward multiplies by (-1)^k on space nodes, inverse
  // by (-1)^{j - N/2} on frequency nodes.
  auto modulate = [&](bool frequency_side) {
    for (std::size_t flat = 0; flat < total; ++flat) {
      double sgn = 1.0;
      std::size_t rem = flat;
      for (int a = rank - 1; a >= 0; --a) {
        const int k = static_cast<int>(rem % shape[a]);
        rem /= shape[a];
        if (!selected[a]) continue;
        sgn *= frequency_side ? alt(k - shape[a] / 2) : alt(k);
      }
      if (sgn < 0) data[flat] = -data[flat];
    }
  };

  modulate(dir == Direction::Inverse);

  std::vector<fftw_iodim> dims, howmany;
  for (int a = 0; a < rank; ++a) {
    fftw_iodim d{shape[a], static_cast<int>(stride[a]), static_cast<int>(stride[a])};
    (selected[a] ? dims : howmany).push_back(d);
  }
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  const int sign = dir == Direction::Forward ? FFTW_FORWARD : FFTW_BACKWARD;
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan = fftw_plan_guru_dft(static_cast<int>(dims.size()), dims.data(),
                              static_cast<int>(howmany.size()), howmany.data(), buf, buf, sign,
                              FFTW_ESTIMATE | FFTW_UNALIGNED);
  }
  if (plan == nullptr) throw NumericalError("transform_axes: FFTW planning failed");
  fftw_execute(plan);
  {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan);
  }

  modulate(dir == Direction::Forward);

  double scale = 1.0;
  for (const auto& ax : axes) {
    const int n = shape[ax.axis];
    const double h = 2.0 * ax.half_width / n;
    const double dp = std::numbers::pi / ax.half_width;
    scale *= dir == Direction::Forward ? h : dp / (2.0 * std::numbers::pi);
  }
  for (auto& v : data) v *= scale;
}

namespace {

GridFunction transform(const GridFunction& f, Direction dir) {
  GridFunction out = f;
  const int n = f.grid.dim();
  std::vector<int> shape(n, f.grid.points_per_axis());
  std::vector<AxisTransform> axes;
  for (int a = 0; a < n; ++a) axes.push_back({a, f.grid.half_width()});
  transform_axes(out.values, shape, axes, dir);
  out.side = dir == Direction::Forward ? Side::Frequency : Side::Space;
  return out;
}

}  // namespace

GridFunction forward_fft(const GridFunction& f) {
  if (f.side != Side::Space) throw DomainError("forward_fft: input must be space-side");
  return transform(f, Direction::Forward);
}

GridFunction inverse_fft(const GridFunction& g) {
  if (g.side != Side::Frequency) throw DomainError("inverse_fft: input must be frequency-side");
  return transform(g, Direction::Inverse);
}

double l2_norm(const GridFunction& f) {
  double s = 0.0;
  for (const auto& v : f.values) s += std::norm(v);
  return std::sqrt(s * f.weight());
}

double lp_norm(const GridFunction& f, double p) {
  if (std::isinf(p)) {
    double m = 0.0;
    for (const auto& v : f.values) m = std::max(m, std::abs(v));
    return m;
  }
  if (!(p >= 1.0)) throw DomainError("lp_norm: p must be >= 1");
  double s = 0.0;
  for (const auto& v : f.values) s += std::pow(std::abs(v), p);
  return std::pow(s * f.weight(), 1.0 / p);
}

GridFunction apply_multiplier(const GridFunction& f, const std::function<cplx(const Point&)>& m) {
  GridFunction spec = forward_fft(f);
  for (std::size_t j = 0; j < spec.values.size(); ++j) spec.values[j] *= m(spec.grid.freq_point(j));
  return inverse_fft(spec);
}

GridFunction spectral_derivative(const GridFunction& f, const MultiIndex& alpha) {
  if (static_cast<int>(alpha.size()) != f.grid.dim())
    throw ShapeError("spectral_derivative: multi-index dimension mismatch");
  return apply_multiplier(f, [&](const Point& p) {
    cplx m = 1.0;
    for (int a = 0; a < p.size(); ++a)
      for (int k = 0; k < alpha[a]; ++k) m *= cplx(0.0, p[a]);
    return m;
  });
}

void phase_vector(double x, int n, double half_width, std::span<cplx> out) {
  const double dp = std::numbers::pi / half_width;
  const double p0 = -(n / 2) * dp;
  const cplx step = std::polar(1.0, x * dp);
  // Resynchronize with an exact exponential every 32 steps to bound drift.
  for (int j = 0; j < n; ++j) {
    if (j % 32 == 0) out[j] = std::polar(1.0, x * (p0 + j * dp));
    else out[j] = out[j - 1] * step;
  }
}

cplx contract_phases(std::span<const cplx> coeffs, int dim, int n,
                     std::span<const cplx> phases, std::span<cplx> scratch) {
  if (dim == 1) {
    cplx s = 0.0;
    for (int j = 0; j < n; ++j) s += coeffs[j] * phases[j];
    return s;
  }
  std::size_t rows = coeffs.size() / n;
  const cplx* last = phases.data() + static_cast<std::size_t>(dim - 1) * n;
  for (std::size_t r = 0; r < rows; ++r) {
    cplx s = 0.0;
    const cplx* c = coeffs.data() + r * n;
    for (int j = 0; j < n; ++j) s += c[j] * last[j];
    scratch[r] = s;
  }
  for (int a = dim - 2; a >= 0; --a) {
    const cplx* ph = phases.data() + static_cast<std::size_t>(a) * n;
    rows /= n;
    for (std::size_t r = 0; r < rows; ++r) {
      cplx s = 0.0;
      for (int j = 0; j < n; ++j) s += scratch[r * n + j] * ph[j];
      scratch[r] = s;
    }
  }
  return scratch[0];
}

cplx evaluate_inverse_at(const GridFunction& spectrum, const Point& x) {
  if (spectrum.side != Side::Frequency)
    throw DomainError("evaluate_inverse_at: input must be frequency-side");
  const Grid& g = spectrum.grid;
  if (x.size() != g.dim()) throw ShapeError("evaluate_inverse_at: point dimension mismatch");
  const int n = g.points_per_axis();
  std::vector<cplx> phases(static_cast<std::size_t>(g.dim()) * n);
  for (int a = 0; a < g.dim(); ++a)
    phase_vector(x[a], n, g.half_width(), std::span<cplx>(phases).subspan(a * n, n));
  std::vector<cplx> scratch(std::max<std::size_t>(1, g.size() / n));
  const double w = std::pow(g.freq_spacing() / (2.0 * std::numbers::pi), g.dim());
  return w * contract_phases(spectrum.values, g.dim(), n, phases, scratch);
}

}  // namespace taupsd
