#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "taupsd/errors.hpp"
#include "taupsd/quadrature.hpp"
#include "taupsd/symbol.hpp"

using namespace taupsd;

namespace {

Point pt(double x) { return Point::Constant(1, x); }

double re(const Symbol& a, double x) { return a(pt(x)).real(); }

}  // namespace

TEST_CASE("multi-index enumeration") {
  CHECK(multi_indices_of_order(2, 2).size() == 3);
  CHECK(multi_indices_up_to(2, 2).size() == 6);
  CHECK(multi_indices_up_to(3, 1).size() == 4);
  CHECK(order({1, 0, 2}) == 3);
  const auto all = multi_indices_up_to(2, 3);
  for (std::size_t i = 1; i < all.size(); ++i) CHECK(order(all[i - 1]) <= order(all[i]));
}

TEST_CASE("bracket powers and their derivatives") {
  CHECK(re(bracket_power_symbol(0.0), 7.3) == 1.0);
  const Symbol b2 = bracket_power_symbol(2.0);
  CHECK(re(b2, 0.0) == doctest::Approx(1.0));
  CHECK(std::abs(b2.deriv({1}, pt(0.0))) < 1e-15);
  CHECK(derivative(b2, {1})(pt(3.0)).real() == doctest::Approx(6.0));
  CHECK(derivative(b2, {1}).degree() == 1.0);

  // Finite-difference oracle for orders 1..2 of <x>^m.
  for (double m : {-3.0, -0.5, 1.5}) {
    const Symbol a = bracket_power_symbol(m);
    const auto f = [m](double x) { return std::pow(1.0 + x * x, m / 2.0); };
    for (double x : {-2.5, -0.3, 0.7, 4.0}) {
      CHECK(a.deriv({1}, pt(x)).real() == doctest::Approx(oracle::central(f, x, 1, 1e-5)).epsilon(1e-8));
      CHECK(a.deriv({2}, pt(x)).real() == doctest::Approx(oracle::central(f, x, 2, 1e-4)).epsilon(1e-6));
    }
  }
  // n = 2 mixed derivative: d1 d2 <x>^m = m (m - 2) x1 x2 <x>^{m-4}.
  const Symbol a = bracket_power_symbol(-1.0);
  Point x(2);
  x << 0.4, -1.3;
  const double br = std::sqrt(1.0 + x.squaredNorm());
  CHECK(a.deriv({1, 1}, x).real() == doctest::Approx(3.0 * x[0] * x[1] * std::pow(br, -5.0)));
  CHECK(a.max_order() >= 4);
  CHECK_THROWS_AS(a.deriv({a.max_order() + 1, 0}, x), CapabilityError);
}

TEST_CASE("Gaussian and mollifier") {
  const Symbol g = gaussian_symbol(1.0);
  CHECK(g.schwartz());
  CHECK(re(g, 2.0) == doctest::Approx(std::exp(-2.0)));
  const auto f = [](double x) { return std::exp(-x * x / 2.0); };
  for (double x : {-1.0, 0.2, 2.5}) {
    CHECK(g.deriv({1}, pt(x)).real() == doctest::Approx(oracle::central(f, x, 1, 1e-5)).epsilon(1e-8));
    CHECK(g.deriv({2}, pt(x)).real() == doctest::Approx(oracle::central(f, x, 2, 1e-4)).epsilon(1e-6));
  }
  const Symbol chi = mollifier_symbol();
  CHECK(re(chi, 0.0) == 1.0);
  CHECK(re(chi, 1.0) == 0.0);
  CHECK(re(chi, -1.5) == 0.0);
  const auto c = [](double x) { return std::abs(x) < 1 ? std::exp(1.0 - 1.0 / (1.0 - x * x)) : 0.0; };
  for (double x : {-0.8, 0.1, 0.5}) {
    CHECK(chi.deriv({1}, pt(x)).real() == doctest::Approx(oracle::central(c, x, 1, 1e-6)).epsilon(1e-6));
    CHECK(chi.deriv({2}, pt(x)).real() == doctest::Approx(oracle::central(c, x, 2, 1e-4)).epsilon(1e-5));
  }
}

TEST_CASE("seminorms") {
  const Grid g(1, 512, 20.0);
  CHECK(seminorm(constant_symbol(1.0), 0.0, {0}, g).value == doctest::Approx(1.0));
  CHECK(seminorm(bracket_power_symbol(-3.0), -3.0, {0}, g).value == doctest::Approx(1.0));
  // d<x>^2 = 2x, weight <x>^{-1}: sup of 2|x|/<x> on [-20, 20) is attained at the edge.
  const double edge = 2.0 * 20.0 / std::sqrt(401.0);
  CHECK(seminorm(bracket_power_symbol(2.0), 2.0, {1}, g).value == doctest::Approx(edge).epsilon(1e-12));
  for (int k = 0; k <= 2; ++k) CHECK(std::isfinite(seminorm(bracket_power_symbol(-3.0), -3.0, {k}, g).value));

  // Homogeneity and inclusion.
  const Symbol a = bracket_power_symbol(-1.0);
  const Symbol a3 = linear_combination(-3.0, a, 0.0, a);
  for (int k = 0; k <= 2; ++k) {
    CHECK(seminorm(a3, -1.0, {k}, g).value == doctest::Approx(3.0 * seminorm(a, -1.0, {k}, g).value));
    CHECK(seminorm(a, 0.5, {k}, g).value <= seminorm(a, -1.0, {k}, g).value);
  }
  // Refinement never lowers the grid maximum on nested grids.
  const Grid fine(1, 1024, 20.0);
  CHECK(seminorm(gaussian_symbol(1.0), 0.0, {1}, fine).value >= seminorm(gaussian_symbol(1.0), 0.0, {1}, g).value);
}

TEST_CASE("spectral fallback matches analytic derivatives") {
  const Grid g(1, 128, 10.0);
  const Symbol a = gaussian_symbol(1.0);
  for (int k = 0; k <= 2; ++k) {
    const GridFunction an = derivative_on_grid(a, {k}, g), sp = spectral_derivative_on_grid(a, {k}, g);
    double err = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      err = std::max(err, std::abs(an.values[i] - sp.values[i]));
      scale = std::max(scale, std::abs(an.values[i]));
    }
    CHECK(err / scale < 1e-6);
  }
  CHECK_THROWS_AS(derivative_on_grid(bracket_power_symbol(1.0), {20}, g), CapabilityError);
}

TEST_CASE("scaling") {
  const Symbol a = gaussian_symbol(std::sqrt(0.5));  // e^{-|x|^2}
  CHECK(re(scale_symbol(a, 0.5), 2.0) == doctest::Approx(std::exp(-1.0)));
  CHECK(re(scale_symbol(a, 1.0), 0.7) == re(a, 0.7));
  CHECK(re(scale_symbol(a, 0.0), 5.0) == re(a, 0.0));
  CHECK(scale_symbol(a, 0.5).deriv({1}, pt(1.0)).real() == doctest::Approx(0.5 * a.deriv({1}, pt(0.5)).real()));

  const Grid g(1, 4096, 512.0);
  std::vector<double> eps;
  for (int k = 1; k <= 8; ++k) eps.push_back(std::ldexp(1.0, -k));
  const auto rows = scaling_lemma_check(a, 1.0, eps, g);
  std::vector<double> xs, ys;
  for (const auto& r : rows) {
    xs.push_back(r.eps);
    ys.push_back(r.sup_gap);
  }
  CHECK(loglog_slope(xs, ys) >= 0.9);
  CHECK(scaling_lemma_check(a, 1.0, {0.0}, g).front().sup_gap == 0.0);
  for (const auto& r : scaling_lemma_check(constant_symbol(2.0), 0.5, eps, g)) CHECK(r.sup_gap == 0.0);
  CHECK_THROWS_AS(scaling_lemma_check(a, 1.5, eps, g), DomainError);
  CHECK_THROWS_AS(scaling_lemma_check(a, 0.0, eps, g), DomainError);
}

TEST_CASE("products") {
  const Symbol a = bracket_power_symbol(1.5), b = bracket_power_symbol(-3.5);
  const Symbol ab = product(a, b), direct = bracket_power_symbol(-2.0);
  CHECK(ab.degree() == -2.0);
  for (double x : {-4.0, 0.0, 0.3, 9.0}) {
    CHECK(std::abs(ab(pt(x)) - direct(pt(x))) < 1e-12);
    CHECK(std::abs(ab.deriv({2}, pt(x)) - direct.deriv({2}, pt(x))) < 1e-12);
  }
  const Symbol one = product(constant_symbol(1.0), a);
  CHECK(std::abs(one.deriv({1}, pt(2.0)) - a.deriv({1}, pt(2.0))) == 0.0);
}

TEST_CASE("cutoff approximation") {
  const Symbol b = bracket_power_symbol(-2.0);
  const Grid g(1, 1024, 40.0);
  CHECK_THROWS_AS(cutoff_approximate(b, -2.5, 0.5), DomainError);
  double prev = INFINITY;
  for (int k = 1; k <= 5; ++k) {
    const double eps = std::ldexp(1.0, -k);
    const Symbol be = cutoff_approximate(b, -1.0, eps);
    CHECK(re(be, 1.5 / eps) == 0.0);
    // chi(eps x) stays close to 1 well inside the support.
    CHECK(re(be, 0.0) == re(b, 0.0));
    const Symbol gap = linear_combination(1.0, be, -1.0, b);
    double sup = 0.0;
    for (int j = 0; j <= 2; ++j) sup = std::max(sup, seminorm(gap, -1.0, {j}, g).value);
    CHECK(sup < prev);
    prev = sup;
  }
  const Symbol zero = cutoff_approximate(constant_symbol(0.0), 1.0, 0.25);
  CHECK(std::abs(zero(pt(0.5))) == 0.0);
}
