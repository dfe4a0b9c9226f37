#include "taupsd/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "taupsd/errors.hpp"
#include "taupsd/euclid.hpp"

namespace taupsd {

int order(const MultiIndex& alpha) { return std::accumulate(alpha.begin(), alpha.end(), 0); }

std::vector<MultiIndex> multi_indices_of_order(int n, int k) {
  std::vector<MultiIndex> out;
  MultiIndex cur(n, 0);
  std::function<void(int, int)> rec = [&](int axis, int left) {
    if (axis == n - 1) {
      cur[axis] = left;
      out.push_back(cur);
      return;
    }
    for (int v = left; v >= 0; --v) {
      cur[axis] = v;
      rec(axis + 1, left - v);
    }
  };
  rec(0, k);
  return out;
}

std::vector<MultiIndex> multi_indices_up_to(int n, int k) {
  std::vector<MultiIndex> out;
  for (int j = 0; j <= k; ++j) {
    auto level = multi_indices_of_order(n, j);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

Symbol::Symbol()
    : Symbol("zero", kSchwartzDegree, 64, [](const MultiIndex&, const Point&) { return cplx(0.0); },
             true) {}

Symbol::Symbol(std::string name, double degree, int max_order, DerivFn deriv, bool schwartz)
    : name_(std::move(name)), degree_(degree), max_order_(max_order), deriv_(std::move(deriv)),
      schwartz_(schwartz) {}

cplx Symbol::operator()(const Point& x) const { return deriv_(MultiIndex(x.size(), 0), x); }

cplx Symbol::deriv(const MultiIndex& alpha, const Point& x) const {
  if (static_cast<int>(alpha.size()) != x.size())
    throw ShapeError("Symbol::deriv: multi-index dimension mismatch");
  if (order(alpha) > max_order_)
    throw CapabilityError("symbol '" + name_ + "': derivative order " +
                          std::to_string(order(alpha)) + " exceeds available order " +
                          std::to_string(max_order_));
  return deriv_(alpha, x);
}

GridFunction spectral_derivative_on_grid(const Symbol& a, const MultiIndex& alpha, const Grid& g) {
  const GridFunction f = sample(g, Side::Space, [&](const Point& x) { return a(x); });
  return spectral_derivative(f, alpha);
}

GridFunction derivative_on_grid(const Symbol& a, const MultiIndex& alpha, const Grid& g) {
  if (order(alpha) <= a.max_order())
    return sample(g, Side::Space, [&](const Point& x) { return a.deriv(alpha, x); });
  if (a.schwartz()) return spectral_derivative_on_grid(a, alpha, g);
  throw CapabilityError("symbol '" + a.name() + "': derivative order " +
                        std::to_string(order(alpha)) + " unavailable");
}

namespace {

double factorial(int k) { return std::tgamma(k + 1.0); }

// d^alpha F(|x|^2) = sum_j prod_i [a_i! / (j_i! (a_i - 2 j_i)!) (2 x_i)^{a_i - 2 j_i}]
//                    * F^{(|alpha| - |j|)}(|x|^2)
double radial_derivative(const MultiIndex& alpha, const Point& x, const std::vector<double>& fk) {
  const int n = static_cast<int>(alpha.size());
  double total = 0.0;
  MultiIndex j(n, 0);
  std::function<void(int, double, int)> rec = [&](int axis, double coeff, int jsum) {
    if (axis == n) {
      total += coeff * fk[order(alpha) - jsum];
      return;
    }
    const int a = alpha[axis];
    for (int ji = 0; 2 * ji <= a; ++ji) {
      const double c = factorial(a) / (factorial(ji) * factorial(a - 2 * ji)) *
                       std::pow(2.0 * x[axis], a - 2 * ji);
      rec(axis + 1, coeff * c, jsum + ji);
    }
  };
  rec(0, 1.0, 0);
  return total;
}

}  // namespace

Symbol radial_symbol(std::string name, double degree, int max_order, RadialProfile profile,
                     bool schwartz) {
  auto fn = [profile = std::move(profile)](const MultiIndex& alpha, const Point& x) -> cplx {
    const int k = order(alpha);
    const auto fk = profile(x.squaredNorm(), k);
    if (k == 0) return fk[0];
    return radial_derivative(alpha, x, fk);
  };
  return Symbol(std::move(name), degree, max_order, fn, schwartz);
}

Symbol constant_symbol(cplx c) {
  return Symbol("const", 0.0, 64,
                [c](const MultiIndex& alpha, const Point&) -> cplx {
                  return order(alpha) == 0 ? c : cplx(0.0);
                });
}

Symbol bracket_power_symbol(double m) {
  return radial_symbol("bracket(m=" + std::to_string(m) + ")", m, 8,
                       [m](double q, int kmax) {
                         std::vector<double> f(kmax + 1);
                         double c = 1.0;
                         const double mu = m / 2.0;
                         for (int k = 0; k <= kmax; ++k) {
                           f[k] = c * std::pow(1.0 + q, mu - k);
                           c *= (mu - k);
                         }
                         return f;
                       },
                       false);
}

Symbol gaussian_symbol(double sigma) {
  if (!(sigma > 0.0)) throw DomainError("gaussian_symbol: sigma must be positive");
  const double rate = -1.0 / (2.0 * sigma * sigma);
  return radial_symbol("gauss(sigma=" + std::to_string(sigma) + ")", kSchwartzDegree, 8,
                       [rate](double q, int kmax) {
                         std::vector<double> f(kmax + 1);
                         const double e = std::exp(rate * q);
                         for (int k = 0; k <= kmax; ++k) f[k] = std::pow(rate, k) * e;
                         return f;
                       },
                       true);
}

Symbol mollifier_symbol() {
  return radial_symbol("mollifier", kSchwartzDegree, 8,
                       [](double q, int kmax) {
                         std::vector<double> f(kmax + 1, 0.0);
                         if (q >= 1.0) return f;
                         // Taylor coefficients of g(q0 + d) = 1 - 1/(w - d), w = 1 - q0,
                         // then of exp(g) by the standard power-series recurrence.
                         const double w = 1.0 - q;
                         std::vector<double> g(kmax + 1), e(kmax + 1);
                         g[0] = 1.0 - 1.0 / w;
                         for (int j = 1; j <= kmax; ++j) g[j] = -std::pow(w, -(j + 1));
                         e[0] = std::exp(g[0]);
                         for (int k = 1; k <= kmax; ++k) {
                           double s = 0.0;
                           for (int j = 1; j <= k; ++j) s += j * g[j] * e[k - j];
                           e[k] = s / k;
                         }
                         double fact = 1.0;
                         for (int k = 0; k <= kmax; ++k) {
                           if (k > 0) fact *= k;
                           f[k] = fact * e[k];
                         }
                         return f;
                       },
                       true);
}

Symbol scale_symbol(const Symbol& a, double eps) {
  if (!std::isfinite(eps) || eps < 0.0) throw DomainError("scale_symbol: eps must be >= 0");
  auto fn = [a, eps](const MultiIndex& alpha, const Point& x) -> cplx {
    const int k = order(alpha);
    if (k > 0 && eps == 0.0) return 0.0;
    return std::pow(eps, k) * a.deriv(alpha, Point(eps * x));
  };
  // a_eps stays in S^0 for a in S^0; for other degrees keep the tag of a.
  return Symbol(a.name() + "_eps", a.degree(), a.max_order(), fn, a.schwartz() && eps > 0.0);
}

namespace {

// Enumerates beta <= alpha componentwise and accumulates binomial weights.
template <class F>
void for_each_sub_index(const MultiIndex& alpha, F&& f) {
  const int n = static_cast<int>(alpha.size());
  MultiIndex beta(n, 0);
  std::function<void(int, double)> rec = [&](int axis, double coeff) {
    if (axis == n) {
      f(beta, coeff);
      return;
    }
    for (int b = 0; b <= alpha[axis]; ++b) {
      beta[axis] = b;
      rec(axis + 1, coeff * std::tgamma(alpha[axis] + 1.0) /
                        (std::tgamma(b + 1.0) * std::tgamma(alpha[axis] - b + 1.0)));
    }
  };
  rec(0, 1.0);
}

}  // namespace

Symbol product(const Symbol& a, const Symbol& b) {
  auto fn = [a, b](const MultiIndex& alpha, const Point& x) -> cplx {
    cplx s = 0.0;
    for_each_sub_index(alpha, [&](const MultiIndex& beta, double c) {
      MultiIndex rest(alpha.size());
      for (std::size_t i = 0; i < alpha.size(); ++i) rest[i] = alpha[i] - beta[i];
      s += c * a.deriv(beta, x) * b.deriv(rest, x);
    });
    return s;
  };
  return Symbol(a.name() + "*" + b.name(), a.degree() + b.degree(),
                std::min(a.max_order(), b.max_order()), fn, a.schwartz() || b.schwartz());
}

Symbol derivative(const Symbol& a, const MultiIndex& beta) {
  if (order(beta) > a.max_order())
    throw CapabilityError("derivative: order exceeds available order of '" + a.name() + "'");
  auto fn = [a, beta](const MultiIndex& alpha, const Point& x) -> cplx {
    MultiIndex sum(alpha.size());
    for (std::size_t i = 0; i < alpha.size(); ++i) sum[i] = alpha[i] + beta[i];
    return a.deriv(sum, x);
  };
  return Symbol("d(" + a.name() + ")", a.degree() - order(beta), a.max_order() - order(beta), fn,
                a.schwartz());
}

Symbol linear_combination(cplx ca, const Symbol& a, cplx cb, const Symbol& b) {
  auto fn = [ca, a, cb, b](const MultiIndex& alpha, const Point& x) -> cplx {
    cplx s = 0.0;
    if (ca != 0.0) s += ca * a.deriv(alpha, x);
    if (cb != 0.0) s += cb * b.deriv(alpha, x);
    return s;
  };
  double deg = std::max(ca != 0.0 ? a.degree() : kSchwartzDegree,
                        cb != 0.0 ? b.degree() : kSchwartzDegree);
  return Symbol("lin(" + a.name() + "," + b.name() + ")", deg,
                std::min(a.max_order(), b.max_order()), fn,
                (ca == 0.0 || a.schwartz()) && (cb == 0.0 || b.schwartz()));
}

Symbol cutoff_approximate(const Symbol& b, double r, double eps) {
  if (!(r > b.degree())) throw DomainError("cutoff_approximate: requires r > degree of b");
  if (!(eps > 0.0) || eps > 1.0) throw DomainError("cutoff_approximate: eps must lie in (0, 1]");
  Symbol out = product(scale_symbol(mollifier_symbol(), eps), b);
  return Symbol("cutoff(" + b.name() + ")", kSchwartzDegree, out.max_order(),
                [out](const MultiIndex& alpha, const Point& x) { return out.deriv(alpha, x); },
                true);
}

SeminormRecord seminorm(const Symbol& a, double m, const MultiIndex& alpha, const Grid& g) {
  if (static_cast<int>(alpha.size()) != g.dim()) throw ShapeError("seminorm: alpha dimension");
  if (order(alpha) > a.max_order() && !a.schwartz())
    throw CapabilityError("seminorm: derivative order unavailable for '" + a.name() + "'");
  const GridFunction d = derivative_on_grid(a, alpha, g);
  const double wexp = -m + order(alpha);
  double best = 0.0;
  for (std::size_t k = 0; k < d.values.size(); ++k) {
    const double w = std::pow(bracket(g.point(k)), wexp);
    best = std::max(best, w * std::abs(d.values[k]));
  }
  return {m, alpha, best, g};
}

std::vector<ScalingRow> scaling_lemma_check(const Symbol& a, double m,
                                            const std::vector<double>& eps_list, const Grid& g) {
  if (!(m > 0.0) || m > 1.0) throw DomainError("scaling_lemma_check: m must lie in (0, 1]");
  if (a.degree() > 0.0) throw PreconditionError("scaling_lemma_check: symbol must lie in S^0");
  const cplx a0 = a(Point::Zero(g.dim()));
  const auto alphas = multi_indices_up_to(g.dim(), 2);
  std::vector<ScalingRow> rows;
  for (double eps : eps_list) {
    const Symbol gap = linear_combination(1.0, scale_symbol(a, eps), -a0, constant_symbol(1.0));
    double sup = 0.0;
    for (const auto& alpha : alphas) sup = std::max(sup, seminorm(gap, m, alpha, g).value);
    rows.push_back({eps, sup});
  }
  return rows;
}

}  // namespace taupsd
