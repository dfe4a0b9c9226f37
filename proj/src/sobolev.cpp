#include "taupsd/sobolev.hpp"

#include <cmath>

#include "taupsd/errors.hpp"
#include "taupsd/symbol.hpp"

namespace taupsd {

GridFunction bessel_kernel(double r, const Grid& g) {
  return inverse_fft(sample(g, Side::Frequency, [r](const Point& p) -> cplx {
    return std::pow(1.0 + p.squaredNorm(), -r / 2.0);
  }));
}

double sobolev_norm_fourier(const GridFunction& f, double m) {
  if (f.side != Side::Space) throw DomainError("sobolev_norm_fourier: expects a space-side function");
  GridFunction spec = forward_fft(f);
  for (std::size_t k = 0; k < spec.values.size(); ++k)
    spec.values[k] *= std::pow(1.0 + spec.grid.freq_point(k).squaredNorm(), m / 2.0);
  return l2_norm(spec) * std::pow(2.0 * M_PI, -f.grid.dim() / 2.0);
}

double sobolev_norm_slobodeckij(const GridFunction& f, double m, double r) {
  if (f.side != Side::Space) throw DomainError("sobolev_norm_slobodeckij: expects a space-side function");
  if (!(m >= 0.0)) throw DomainError("sobolev_norm_slobodeckij: requires m >= 0");
  if (!(r > 0.0)) throw DomainError("sobolev_norm_slobodeckij: requires r > 0");
  const Grid& g = f.grid;
  const int n = g.dim(), N = g.points_per_axis();
  const int whole = static_cast<int>(std::floor(m));
  const double mu = m - whole;
  const double h = g.spacing(), vol = g.cell_volume();

  double total = 0.0;
  for (const auto& alpha : multi_indices_up_to(n, whole)) {
    const GridFunction d = spectral_derivative(f, alpha);
    const double norm = l2_norm(d);
    total += norm * norm;
    if (order(alpha) != whole || mu == 0.0) continue;

    // Lattice offsets with |z| <= r, z != 0.
    const int reach = static_cast<int>(std::floor(r / h + 1e-12));
    const Grid offsets(n, 2 * reach + 2, (reach + 1) * h);
    double dq = 0.0;
#pragma omp parallel for reduction(+ : dq) schedule(dynamic)
    for (std::size_t o = 0; o < offsets.size(); ++o) {
      MultiIndex shift = offsets.unflatten(o);
      double zz = 0.0;
      bool inside = true;
      for (int i = 0; i < n; ++i) {
        shift[i] -= reach + 1;
        if (std::abs(shift[i]) > reach) inside = false;
        zz += (shift[i] * h) * (shift[i] * h);
      }
      if (!inside || zz == 0.0 || std::sqrt(zz) > r * (1.0 + 1e-12)) continue;
      const double w = std::pow(zz, -(n + 2.0 * mu) / 2.0);
      double s = 0.0;
      for (std::size_t k = 0; k < g.size(); ++k) {
        MultiIndex idx = g.unflatten(k);
        bool valid = true;
        for (int i = 0; i < n; ++i) {
          idx[i] += shift[i];
          if (idx[i] < 0 || idx[i] >= N) valid = false;
        }
        const cplx shifted = valid ? d.values[g.flatten(idx)] : cplx(0.0);
        s += std::norm(shifted - d.values[k]);
      }
      dq += s * w * vol * vol;
    }
    total += dq;
  }
  return std::sqrt(total);
}

}  // namespace taupsd
