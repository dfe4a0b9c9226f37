#pragma once

// Test-only brute-force references. Nothing here calls into the library's
// transform or quadrature code.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <random>
#include <vector>

#include "taupsd/fourier.hpp"

namespace oracle {

using taupsd::cplx;

/// sum_k f(x_k) e^{-i x_k p_j} h^n in long double.
inline std::vector<cplx> forward_dft(const taupsd::GridFunction& f) {
  const taupsd::Grid& g = f.grid;
  std::vector<cplx> out(g.size());
  const long double w = g.cell_volume();
  for (std::size_t j = 0; j < g.size(); ++j) {
    const auto p = g.freq_point(j);
    std::complex<long double> acc = 0;
    for (std::size_t k = 0; k < g.size(); ++k) {
      const auto x = g.point(k);
      long double phase = 0;
      for (int d = 0; d < g.dim(); ++d) phase -= static_cast<long double>(x[d]) * p[d];
      acc += std::complex<long double>(f.values[k].real(), f.values[k].imag()) *
             std::complex<long double>(std::cos(phase), std::sin(phase));
    }
    acc *= w;
    out[j] = cplx(static_cast<double>(acc.real()), static_cast<double>(acc.imag()));
  }
  return out;
}

/// Composite Simpson rule with n (even) panels.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n) {
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int k = 1; k < n; ++k) s += (k % 2 ? 4.0 : 2.0) * f(a + k * h);
  return s * h / 3.0;
}

/// Central difference derivative of order 1 or 2.
inline double central(const std::function<double(double)>& f, double x, int order, double h) {
  if (order == 1) return (f(x + h) - f(x - h)) / (2.0 * h);
  return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}

inline taupsd::GridFunction random_function(const taupsd::Grid& g, taupsd::Side side, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  taupsd::GridFunction f(g, side);
  for (auto& v : f.values) v = {nd(rng), nd(rng)};
  return f;
}

}  // namespace oracle
