#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "taupsd/errors.hpp"
#include "taupsd/partition.hpp"

using namespace taupsd;

namespace {

Point pt(double x) { return Point::Constant(1, x); }

}  // namespace

TEST_CASE("partition pair values") {
  const PartitionPair pp = build_partition();
  CHECK(pp.phi(pt(0.5)).real() == 1.0);
  CHECK(pp.phi(pt(2.5)).real() == 0.0);
  CHECK(pp.psi(pt(0.5)).real() == 0.0);
  CHECK(pp.psi(pt(3.0)).real() == 0.0);
  CHECK(pp.phi.max_order() >= 1);
  Point e(2);
  e << 0.6, -0.8;
  CHECK(pp.phi(Point(0.9 * e)).real() == 1.0);
  for (double r = 0.0; r <= 2.5; r += 0.01) {
    CHECK(pp.phi_radial(r) >= 0.0);
    CHECK(pp.phi_radial(r) <= 1.0);
    // psi(p) = -<grad phi(p), p> = -r Phi'(r).
    CHECK(pp.psi_radial(r) == doctest::Approx(-r * pp.phi_radial_derivative(r)).epsilon(1e-12));
    if (r > 1.0 && r < 2.0) CHECK(pp.phi_radial_derivative(r) == doctest::Approx(oracle::central([&](double s) { return pp.phi_radial(s); }, r, 1, 1e-6)).epsilon(1e-5));
  }
}

TEST_CASE("t-derivative of phi(p/t) by central differences") {
  const PartitionPair pp = build_partition();
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> up(0.0, 4.0), ut(0.6, 3.0);
  const double d = 1e-5;
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const double p = up(rng), t = ut(rng);
    const double fd = (pp.phi_radial(p / (t + d)) - pp.phi_radial(p / (t - d))) / (2 * d);
    worst = std::max(worst, std::abs(fd - pp.psi_radial(p / t) / t));
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("log-t rule") {
  const QuadratureRule q = log_t_rule(64.0, 400);
  CHECK(q.nodes.size() == 400);
  double sum = 0.0, first = 0.0;
  for (std::size_t i = 0; i < q.nodes.size(); ++i) {
    sum += q.weights[i];
    first += q.weights[i] * q.nodes[i];
  }
  CHECK(sum == doctest::Approx(std::log(64.0)).epsilon(1e-13));  // int dt/t
  CHECK(first == doctest::Approx(63.0).epsilon(1e-13));          // int t dt/t
  CHECK(log_t_rule(8.0, 17).nodes.size() == 32);
}

TEST_CASE("completeness and reconstruction") {
  const PartitionPair pp = build_partition();
  const Grid g(1, 256, 12.0);
  CHECK(partition_completeness(pp, 64.0, 400, g) < 1e-6);
  CHECK(partition_completeness(pp, 64.0, 400, Grid(2, 64, 3.0)) < 1e-6);

  const Symbol a = bracket_power_symbol(-2.0);
  const Reconstruction rec = dyadic_reconstruct(a, -2.0, pp, 64.0, 400, g);
  double err = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j) {
    const Point p = g.freq_point(j);
    if (std::abs(p[0]) <= 32.0) err = std::max(err, std::abs(rec.values.values[j] - a(p)));
    // No band reaches |p| <= 1, so the reconstruction is phi a = a there.
    if (std::abs(p[0]) <= 1.0) CHECK(rec.values.values[j] == a(p));
  }
  CHECK(err < 1e-6);
  CHECK(rec.values.values[g.size() / 2] == a(pt(0.0)));
  // pi/h = 33.5 exceeds T/2 = 32.
  CHECK_FALSE(rec.covered);
  CHECK_FALSE(rec.warning.empty());
  CHECK(dyadic_reconstruct(a, -2.0, pp, 80.0, 400, g).covered);
  CHECK_THROWS_AS(dyadic_reconstruct(a, -2.0, pp, 1.5, 400, g), DomainError);
  CHECK_THROWS_AS(dyadic_reconstruct(a, -2.0, pp, 64.0, 8, g), DomainError);
}

TEST_CASE("band pieces") {
  const PartitionPair pp = build_partition();
  const Symbol one = constant_symbol(1.0);
  const Grid g(1, 2048, 20.0);
  const BandDecay b1 = band_term_decay(one, 0.0, pp, 1.0, 2, 4, g);
  CHECK(std::isfinite(b1.constant));
  CHECK(b1.constant > 0.0);
  // At x = 0 the bound is C t^{m+n}.
  const std::size_t origin = g.size() / 2;
  CHECK(b1.ratio.values[origin].real() <= b1.constant);
  const BandDecay b2 = band_term_decay(one, 0.0, pp, 1.0, 2, 4, Grid(1, 4096, 20.0));
  CHECK(std::abs(b2.constant - b1.constant) / b1.constant < 0.05);
  double cmax = 0.0;
  for (double t : {1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0})
    cmax = std::max(cmax, band_term_decay(one, 0.0, pp, t, 2, 4, g).constant);
  CHECK(cmax <= 2.0 * b1.constant);
  CHECK_THROWS_AS(band_term_decay(one, 0.0, pp, 1.0, 1, 4, g), PreconditionError);
  CHECK_THROWS_AS(band_term_decay(one, 0.0, pp, 0.5, 2, 4, g), PreconditionError);
  CHECK_THROWS_AS(band_term_decay(one, 0.0, pp, 100.0, 2, 4, g), PreconditionError);
}
