#include <cmath>
#include <random>

#include <Eigen/LU>

#include "doctest.h"
#include "taupsd/errors.hpp"
#include "taupsd/euclid.hpp"
#include "taupsd/grid.hpp"

using namespace taupsd;

namespace {

Point pt(std::initializer_list<double> v) {
  Point p(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) p[i++] = x;
  return p;
}

Point random_point(std::mt19937_64& rng, int n, double r) {
  std::uniform_real_distribution<double> u(-r, r);
  Point p(n);
  for (int i = 0; i < n; ++i) p[i] = u(rng);
  return p;
}

}  // namespace

TEST_CASE("grid nodes and frequencies") {
  const Grid g(1, 8, 4.0);
  CHECK(g.spacing() == doctest::Approx(1.0));
  CHECK(g.node(0) == -4.0);
  CHECK(g.node(7) == 3.0);
  CHECK(g.freq_spacing() == doctest::Approx(M_PI / 4.0));
  CHECK(g.frequency(0) == doctest::Approx(-M_PI));
  CHECK(g.max_frequency() == doctest::Approx(M_PI));
  CHECK(g.point(4)[0] == 0.0);

  const Grid g2(2, 4, 1.0);
  CHECK(g2.size() == 16);
  // Last axis fastest.
  CHECK(g2.point(1)[0] == -1.0);
  CHECK(g2.point(1)[1] == -0.5);
  for (std::size_t k = 0; k < g2.size(); ++k) CHECK(g2.flatten(g2.unflatten(k)) == k);

  CHECK_THROWS_AS(Grid(1, 7, 1.0), DomainError);
  CHECK_THROWS_AS(Grid(0, 8, 1.0), DomainError);
  CHECK_THROWS_AS(Grid(1, 8, -1.0), DomainError);
}

TEST_CASE("bracket") {
  CHECK(bracket(pt({0.0})) == 1.0);
  CHECK(bracket(pt({1.0})) == doctest::Approx(std::sqrt(2.0)));
  CHECK(bracket(pt({3.0, 4.0})) == doctest::Approx(std::sqrt(26.0)));
  CHECK_THROWS_AS(bracket(pt({NAN})), DomainError);
  CHECK_THROWS_AS(bracket(pt({INFINITY, 0.0})), DomainError);
}

TEST_CASE("peetre gap is nonnegative") {
  CHECK(peetre_gap(pt({0.0}), pt({0.0}), 3.0) == doctest::Approx(std::pow(2.0, 1.5) - 1.0));
  CHECK(peetre_gap(pt({0.0}), pt({0.0}), -3.0) == doctest::Approx(std::pow(2.0, 1.5) - 1.0));
  CHECK(peetre_gap(pt({1.0, 2.0}), pt({-5.0, 0.5}), 0.0) == doctest::Approx(0.0));
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> us(-4.0, 4.0);
  for (int n = 1; n <= 3; ++n) {
    double worst = 0.0;
    for (int k = 0; k < 10000; ++k) {
      const double s = us(rng);
      const Point x = random_point(rng, n, 10.0), y = random_point(rng, n, 10.0);
      const double rel = peetre_gap(x, y, s) / std::pow(bracket(x + y), s);
      worst = std::min(worst, rel);
    }
    CHECK(worst >= -1e-12);
  }
}

TEST_CASE("endomorphism classification") {
  const Endo id = scalar_endo(2, 1.0);
  CHECK(id.det_tau == doctest::Approx(1.0));
  CHECK(id.det_one_minus_tau == doctest::Approx(0.0));
  CHECK(id.cls == EndoClass::U0Only);
  CHECK(id.in_u0());
  CHECK_FALSE(id.in_u1());

  const Endo zero = scalar_endo(3, 0.0);
  CHECK(zero.cls == EndoClass::U1Only);
  CHECK(scalar_endo(1, 0.5).cls == EndoClass::Both);

  Eigen::MatrixXd p(2, 2);
  p << 1.0, 0.0, 0.0, 0.0;  // projection: tau and 1 - tau both singular
  CHECK(classify_endo(p).cls == EndoClass::OutsideU);
  CHECK_FALSE(classify_endo(p).in_u());

  CHECK_THROWS_AS(classify_endo(Eigen::MatrixXd::Zero(2, 3)), ShapeError);

  // Perturbations below the stated margin never flip a well-separated class.
  std::mt19937_64 rng(5);
  std::normal_distribution<double> nd;
  for (int k = 0; k < 200; ++k) {
    Eigen::MatrixXd t(2, 2);
    t << nd(rng), nd(rng), nd(rng), nd(rng);
    const Endo e = classify_endo(t);
    const double margin = 2e-10 * (1.0 + std::pow(operator_norm(t), 2.0));
    if (std::abs(e.det_tau) < margin || std::abs(e.det_one_minus_tau) < margin) continue;
    const double cof = std::max(operator_norm(t), operator_norm(Eigen::MatrixXd::Identity(2, 2) - t));
    Eigen::MatrixXd d(2, 2);
    d << nd(rng), nd(rng), nd(rng), nd(rng);
    d *= 1e-10 / (2.0 * std::max(cof, 1.0) * d.norm());
    CHECK(classify_endo(t + d).cls == e.cls);
  }
}

TEST_CASE("C_tau and its inverse") {
  const Point x = pt({1.0, -2.0}), y = pt({0.5, 3.0});
  {
    const auto [v, u] = c_tau(scalar_endo(2, 0.0), x, y);
    CHECK((v - x).norm() == 0.0);
    CHECK((u - (x - y)).norm() == 0.0);
  }
  {
    const auto [v, u] = c_tau(scalar_endo(2, 1.0), x, y);
    CHECK((v - y).norm() == 0.0);
    CHECK((u - (x - y)).norm() == 0.0);
  }
  {
    const auto [a, b] = c_tau_inv(scalar_endo(2, 0.3), x, Point::Zero(2));
    CHECK((a - x).norm() == 0.0);
    CHECK((b - x).norm() == 0.0);
    const auto [c, d] = c_tau_inv(scalar_endo(2, 0.0), x, y);
    CHECK((c - x).norm() == 0.0);
    CHECK((d - (x - y)).norm() == 0.0);
  }
  CHECK_THROWS_AS(c_tau(scalar_endo(2, 0.5), pt({1.0}), y), ShapeError);

  std::mt19937_64 rng(7);
  std::normal_distribution<double> nd;
  for (int n = 1; n <= 3; ++n)
    for (int k = 0; k < 100; ++k) {
      Eigen::MatrixXd t(n, n);
      for (int i = 0; i < n * n; ++i) t.data()[i] = 2.0 * nd(rng);
      const Endo tau = classify_endo(t);
      const Point a = random_point(rng, n, 10.0), b = random_point(rng, n, 10.0);
      const auto [v, u] = c_tau(tau, a, b);
      const auto [a2, b2] = c_tau_inv(tau, v, u);
      const double scale = 1.0 + a.norm() + b.norm();
      CHECK((a2 - a).norm() / scale < 1e-12);
      CHECK((b2 - b).norm() / scale < 1e-12);
      CHECK(std::abs(c_tau_block(tau).determinant()) == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("bracket comparison") {
  const Eigen::MatrixXd a = Eigen::MatrixXd::Identity(2, 2);
  CHECK(bracket_comparison(a, 0.0, pt({3.0, 1.0}), 1.0));
  CHECK(bracket_comparison(a, 0.5, Point::Zero(2), 1.0));
  CHECK_THROWS_AS(bracket_comparison(a, 0.6, pt({1.0, 1.0}), 1.0), PreconditionError);
  CHECK_THROWS_AS(bracket_comparison(a, 0.1, pt({1.0, 1.0}), 1.5), PreconditionError);

  // Unit-norm A at the boundary h = 1/2.
  std::mt19937_64 rng(3);
  std::normal_distribution<double> nd;
  for (int k = 0; k < 1000; ++k) {
    Eigen::MatrixXd m(2, 2);
    m << nd(rng), nd(rng), nd(rng), nd(rng);
    m /= operator_norm(m);
    CHECK(bracket_comparison(m, 0.5, random_point(rng, 2, 100.0), 1.0));
  }
  // The worst case A = -1 still holds: <v> <= 2 <v/2>.
  CHECK(bracket_comparison(-a, 0.5, pt({1e6, 0.0}), 1.0));
}
