#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "taupsd/fourier.hpp"
#include "taupsd/grid.hpp"

namespace taupsd {

/// Degree tag for members of every S^m (Schwartz-type symbols).
inline constexpr double kSchwartzDegree = -std::numeric_limits<double>::infinity();

int order(const MultiIndex& alpha);

/// All multi-indices in dimension n with |alpha| <= k, ordered by |alpha|.
std::vector<MultiIndex> multi_indices_up_to(int n, int k);

/// All multi-indices in dimension n with |alpha| == k.
std::vector<MultiIndex> multi_indices_of_order(int n, int k);

/// A smooth function on X (or X*) together with analytic derivatives up to
/// `max_order`. Symbols are immutable values; copies share the closure.
class Symbol {
 public:
  using DerivFn = std::function<cplx(const MultiIndex&, const Point&)>;

  /// The zero symbol.
  Symbol();
  Symbol(std::string name, double degree, int max_order, DerivFn deriv, bool schwartz = false);

  const std::string& name() const { return name_; }
  /// Certified degree m (S^m membership); kSchwartzDegree for S(X).
  double degree() const { return degree_; }
  int max_order() const { return max_order_; }
  /// Rapid decay with all derivatives: spectral differentiation on a
  /// periodic grid is accurate, so it may stand in for missing orders.
  bool schwartz() const { return schwartz_; }

  cplx operator()(const Point& x) const;
  /// Analytic derivative; throws CapabilityError beyond max_order.
  cplx deriv(const MultiIndex& alpha, const Point& x) const;

 private:
  std::string name_;
  double degree_;
  int max_order_;
  DerivFn deriv_;
  bool schwartz_;
};

/// Derivative samples on the space nodes of `g`: analytic when the order is
/// available, spectral for Schwartz symbols, CapabilityError otherwise.
/// Symbols on X* are sampled by passing the dual grid.
GridFunction derivative_on_grid(const Symbol& a, const MultiIndex& alpha, const Grid& g);

/// Same, always via spectral differentiation of the sampled symbol.
GridFunction spectral_derivative_on_grid(const Symbol& a, const MultiIndex& alpha, const Grid& g);

// Radial building block: a symbol F(|x|^2) with F^{(k)} supplied by
// `profile(q, K)`, which returns {F(q), F'(q), ..., F^{(K)}(q)}.
using RadialProfile = std::function<std::vector<double>(double q, int max_k)>;
Symbol radial_symbol(std::string name, double degree, int max_order, RadialProfile profile,
                     bool schwartz);

Symbol constant_symbol(cplx c);
/// <x>^m with analytic derivatives to order 8.
Symbol bracket_power_symbol(double m);
/// exp(-|x|^2 / (2 sigma^2)).
Symbol gaussian_symbol(double sigma);
/// Standard mollifier chi(x) = exp(1 - 1/(1 - |x|^2)) on |x| < 1, chi(0) = 1.
Symbol mollifier_symbol();

/// a_eps(x) = a(eps x).
Symbol scale_symbol(const Symbol& a, double eps);
Symbol product(const Symbol& a, const Symbol& b);
/// d^beta a, degree m - |beta|.
Symbol derivative(const Symbol& a, const MultiIndex& beta);
/// ca * a + cb * b.
Symbol linear_combination(cplx ca, const Symbol& a, cplx cb, const Symbol& b);

/// chi(eps .) b for the fixed mollifier chi; requires r > degree(b).
Symbol cutoff_approximate(const Symbol& b, double r, double eps);

struct SeminormRecord {
  double m = 0.0;
  MultiIndex alpha;
  double value = 0.0;
  Grid grid_used;
};

/// Grid maximum of <x>^{-m+|alpha|} |d^alpha a(x)| over the space nodes.
SeminormRecord seminorm(const Symbol& a, double m, const MultiIndex& alpha, const Grid& g);

struct ScalingRow {
  double eps = 0.0;
  double sup_gap = 0.0;
};

/// For each eps: sup over nodes and |alpha| <= 2 of
/// <x>^{-m+|alpha|} |d^alpha (a_eps - a(0))(x)|. Requires 0 < m <= 1 and
/// a of degree <= 0.
std::vector<ScalingRow> scaling_lemma_check(const Symbol& a, double m,
                                            const std::vector<double>& eps_list, const Grid& g);

}  // namespace taupsd
