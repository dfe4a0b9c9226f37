#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "taupsd/errors.hpp"
#include "taupsd/sobolev.hpp"

using namespace taupsd;
constexpr double kPi = std::numbers::pi;

namespace {

std::size_t origin(const Grid& g) { return g.flatten(MultiIndex(g.dim(), g.points_per_axis() / 2)); }

}  // namespace

TEST_CASE("Bessel kernel") {
  const Grid g(1, 512, 20.0);
  const std::size_t o = origin(g);
  const GridFunction k0 = bessel_kernel(0.0, g);
  for (std::size_t i = 0; i < g.size(); ++i)
    CHECK(std::abs(k0.values[i] - (i == o ? 1.0 / g.spacing() : 0.0)) < 1e-10);

  const GridFunction k2 = bessel_kernel(2.0, g);
  for (std::size_t i = 1; i < g.size(); ++i) CHECK(std::abs(k2.values[i] - k2.values[g.size() - i]) < 1e-14);
  // e^{-|x|}/2 away from the kink at the origin; the kink itself is limited
  // by the frequency cutoff pi/h.
  double far = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double x = g.point(i)[0];
    if (std::abs(x) >= 1.0) far = std::max(far, std::abs(k2.values[i] - std::exp(-std::abs(x)) / 2));
  }
  CHECK(far < 1e-4);

  // (1 + |p|^2)^{r/2} undoes the kernel.
  const GridFunction back =
      apply_multiplier(k2, [](const Point& p) -> cplx { return 1.0 + p.squaredNorm(); });
  const double d = 1.0 / g.spacing();
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(std::abs(back.values[i] - (i == o ? d : 0.0)) / d < 1e-8);
}

TEST_CASE("Bessel kernels of opposite order convolve to the delta") {
  const Grid g(1, 128, 8.0);
  const int N = g.points_per_axis();
  const GridFunction kp = bessel_kernel(1.5, g), km = bessel_kernel(-1.5, g);
  const double h = g.spacing();
  for (int m = 0; m < N; ++m) {
    cplx acc = 0.0;
    for (int k = 0; k < N; ++k) acc += kp.values[k] * km.values[((m - k + N / 2) % N + N) % N] * h;
    const double expect = m == N / 2 ? 1.0 / h : 0.0;
    CHECK(std::abs(acc - expect) * h < 1e-8);
  }
}

TEST_CASE("Fourier Sobolev norm") {
  const Grid g(1, 256, 15.0);
  const GridFunction f = sample(g, Side::Space, [](const Point& x) { return std::exp(-x.squaredNorm() / 2); });
  CHECK(sobolev_norm_fourier(f, 0.0) == doctest::Approx(l2_norm(f)).epsilon(1e-12));
  // int (1 + p^2) e^{-p^2} dp / (2 pi) * 2 pi = 1.5 sqrt(pi).
  CHECK(sobolev_norm_fourier(f, 1.0) == doctest::Approx(std::sqrt(1.5 * std::sqrt(kPi))).epsilon(1e-6));
  double prev = 0.0;
  for (double m : {0.0, 0.5, 1.0, 2.5, 4.0}) {
    const double v = sobolev_norm_fourier(f, m);
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("Slobodeckij norm") {
  const Grid g(1, 256, 10.0);
  const GridFunction zero(g, Side::Space);
  CHECK(sobolev_norm_slobodeckij(zero, 1.5, 1.0) == 0.0);
  const GridFunction f = sample(g, Side::Space, [](const Point& x) { return std::exp(-x.squaredNorm() / 2); });
  // Integer order: sum of derivative norms only, ||f||^2 + ||f'||^2 = 1.5 sqrt(pi).
  CHECK(sobolev_norm_slobodeckij(f, 1.0, 1.0) == doctest::Approx(std::sqrt(1.5 * std::sqrt(kPi))).epsilon(1e-8));
  double prev = -1.0;
  for (int N : {128, 256}) {
    const Grid gn(1, N, 10.0);
    const GridFunction fn = sample(gn, Side::Space, [](const Point& x) { return std::exp(-x.squaredNorm() / 2); });
    const double ratio = sobolev_norm_slobodeckij(fn, 1.5, 1.0) / sobolev_norm_fourier(fn, 1.5);
    CHECK(ratio >= 0.1);
    CHECK(ratio <= 10.0);
    if (prev > 0) CHECK(std::abs(ratio - prev) / prev < 0.10);
    prev = ratio;
  }
  CHECK_THROWS_AS(sobolev_norm_slobodeckij(f, 1.5, -1.0), DomainError);
}
