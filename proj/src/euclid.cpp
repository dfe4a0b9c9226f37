#include "taupsd/euclid.hpp"

#include <cmath>

#include <Eigen/LU>
#include <Eigen/SVD>

#include "taupsd/errors.hpp"

namespace taupsd {

namespace {

void require_finite(const Point& x, const char* what) {
  if (!x.allFinite()) throw DomainError(std::string(what) + ": non-finite input");
}

void require_same_dim(const Endo& tau, const Point& a, const Point& b) {
  if (a.size() != tau.dim() || b.size() != tau.dim())
    throw ShapeError("C_tau: point dimension does not match tau");
}

}  // namespace

double bracket(const Point& x) {
  require_finite(x, "bracket");
  return std::sqrt(1.0 + x.squaredNorm());
}

double peetre_gap(const Point& x, const Point& y, double s) {
  require_finite(x, "peetre_gap");
  require_finite(y, "peetre_gap");
  if (!std::isfinite(s)) throw DomainError("peetre_gap: non-finite exponent");
  if (x.size() != y.size()) throw ShapeError("peetre_gap: dimension mismatch");
  const double as = std::abs(s);
  return std::pow(2.0, as / 2.0) * std::pow(bracket(x), as) * std::pow(bracket(y), s) -
         std::pow(bracket(x + y), s);
}

const char* to_string(EndoClass c) {
  switch (c) {
    case EndoClass::U0Only: return "U0_only";
    case EndoClass::U1Only: return "U1_only";
    case EndoClass::Both: return "both";
    case EndoClass::OutsideU: return "outside_U";
  }
  return "?";
}

double operator_norm(const Eigen::MatrixXd& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a);
  return svd.singularValues()(0);
}

Endo classify_endo(const Eigen::MatrixXd& tau, double tol) {
  if (tau.rows() != tau.cols() || tau.rows() == 0)
    throw ShapeError("classify_endo: tau must be a non-empty square matrix");
  if (!(tol > 0.0)) throw DomainError("classify_endo: tolerance must be positive");
  if (!tau.allFinite()) throw DomainError("classify_endo: non-finite entries");
  const auto n = tau.rows();
  Endo e;
  e.matrix = tau;
  e.det_tau = tau.determinant();
  e.det_one_minus_tau = (Eigen::MatrixXd::Identity(n, n) - tau).determinant();
  const double zero = tol * (1.0 + std::pow(operator_norm(tau), static_cast<double>(n)));
  const bool inv0 = std::abs(e.det_tau) >= zero;
  const bool inv1 = std::abs(e.det_one_minus_tau) >= zero;
  if (inv0 && inv1) e.cls = EndoClass::Both;
  else if (inv0) e.cls = EndoClass::U0Only;
  else if (inv1) e.cls = EndoClass::U1Only;
  else e.cls = EndoClass::OutsideU;
  return e;
}

Endo scalar_endo(int n, double c, double tol) {
  return classify_endo(c * Eigen::MatrixXd::Identity(n, n), tol);
}

std::pair<Point, Point> c_tau(const Endo& tau, const Point& x, const Point& y) {
  require_same_dim(tau, x, y);
  const Point v = x - tau.matrix * x + tau.matrix * y;
  return {v, x - y};
}

std::pair<Point, Point> c_tau_inv(const Endo& tau, const Point& v, const Point& u) {
  require_same_dim(tau, v, u);
  const Point tu = tau.matrix * u;
  return {v + tu, v - (u - tu)};
}

Eigen::MatrixXd c_tau_block(const Endo& tau) {
  const auto n = tau.dim();
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd m(2 * n, 2 * n);
  m << id - tau.matrix, tau.matrix, id, -id;
  return m;
}

bool bracket_comparison(const Eigen::MatrixXd& a, double h, const Point& v, double lambda) {
  if (a.rows() != a.cols() || a.rows() != v.size())
    throw ShapeError("bracket_comparison: shape mismatch");
  if (lambda < 0.0 || lambda > 1.0)
    throw PreconditionError("bracket_comparison: lambda must lie in [0, 1]");
  // Small slack so that |h| ||A|| == 1/2 computed in floating point passes.
  if (std::abs(h) * operator_norm(a) > 0.5 * (1.0 + 1e-12))
    throw PreconditionError("bracket_comparison: requires |h| ||A|| <= 1/2");
  const Point w = v + lambda * h * (a * v);
  return bracket(v) <= 2.0 * bracket(w);
}

}  // namespace taupsd
