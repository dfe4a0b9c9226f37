#pragma once

#include <utility>

#include <Eigen/Core>

#include "taupsd/grid.hpp"

namespace taupsd {

/// Japanese bracket <x> = (1 + |x|^2)^{1/2}.
double bracket(const Point& x);

/// 2^{|s|/2} <x>^{|s|} <y>^s - <x+y>^s, nonnegative by Peetre's inequality.
double peetre_gap(const Point& x, const Point& y, double s);

enum class EndoClass { U0Only, U1Only, Both, OutsideU };

const char* to_string(EndoClass c);

/// A real n x n endomorphism tau together with its position relative to
/// U0 (invertible maps) and U1 = 1 + U0.
struct Endo {
  Eigen::MatrixXd matrix;
  double det_tau = 0.0;
  double det_one_minus_tau = 0.0;
  EndoClass cls = EndoClass::OutsideU;

  int dim() const { return static_cast<int>(matrix.rows()); }
  bool in_u0() const { return cls == EndoClass::U0Only || cls == EndoClass::Both; }
  bool in_u1() const { return cls == EndoClass::U1Only || cls == EndoClass::Both; }
  bool in_u() const { return cls != EndoClass::OutsideU; }
};

/// Default singularity tolerance for classify_endo.
inline constexpr double kEndoTolerance = 1e-10;

/// A determinant counts as zero when |det| < tol * (1 + ||tau||^n).
Endo classify_endo(const Eigen::MatrixXd& tau, double tol = kEndoTolerance);

/// tau = c * identity in dimension n.
Endo scalar_endo(int n, double c, double tol = kEndoTolerance);

struct PhasePoint {
  Point x;
  Point p;
};

/// C_tau(x, y) = ((1 - tau) x + tau y, x - y).
std::pair<Point, Point> c_tau(const Endo& tau, const Point& x, const Point& y);

/// C_tau^{-1}(v, u) = (v + tau u, v - (1 - tau) u).
std::pair<Point, Point> c_tau_inv(const Endo& tau, const Point& v, const Point& u);

/// The 2n x 2n block matrix [[1 - tau, tau], [1, -1]] of C_tau.
Eigen::MatrixXd c_tau_block(const Endo& tau);

/// Operator norm (largest singular value).
double operator_norm(const Eigen::MatrixXd& a);

/// Evaluates <v> <= 2 <v + lambda h A v>. Throws PreconditionError unless
/// |h| ||A|| <= 1/2 and 0 <= lambda <= 1.
bool bracket_comparison(const Eigen::MatrixXd& a, double h, const Point& v, double lambda);

}  // namespace taupsd
