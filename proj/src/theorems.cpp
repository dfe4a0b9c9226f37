#include "taupsd/theorems.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include "taupsd/errors.hpp"
#include "taupsd/quadrature.hpp"

namespace taupsd {

std::vector<HsRow> hs_identity_check(const PhaseSymbol& a, const std::vector<Endo>& taus) {
  const int n = a.grid_x.dim();
  const double l2 = lp_norm(a, 2.0);
  const double target = std::pow(2.0 * std::numbers::pi, -n / 2.0) * l2;
  std::vector<HsRow> rows;
  for (const Endo& tau : taus) {
    const double hs = schatten(quantize(a, tau), {2.0}).norm(2.0);
    HsRow row{tau, hs, target, l2 > 0.0 ? hs / l2 : 0.0, 0.0};
    row.rel_error = target > 0.0 ? std::abs(hs - target) / target : hs;
    rows.push_back(row);
  }
  return rows;
}

CordesResult cordes_check(const Symbol& a, const Symbol& b, double s, double t, const Endo& tau0,
                          const std::vector<double>& steps, const std::vector<int>& levels,
                          double half_width) {
  const int n = tau0.dim();
  if (!(s > n) || !(t > n)) throw HypothesisError("cordes_check: requires s, t > n");
  if (a.degree() > -t + 1e-12) throw HypothesisError("cordes_check: a must lie in S^{-t}");
  if (b.degree() > -s + 1e-12) throw HypothesisError("cordes_check: b must lie in S^{-s}");
  if (!tau0.in_u()) throw ClassificationError("cordes_check: tau0 must lie in U");
  if (levels.empty()) throw DomainError("cordes_check: need at least one grid level");

  CordesResult out;
  out.tau0 = tau0;
  for (int N : levels) {
    const Grid g(n, N, half_width);
    const double tn = schatten(quantize(product_phase_symbol(a, b, g), tau0), {1.0}).norm(1.0);
    if (!out.levels.empty()) {
      const double prev = out.levels.back().trace_norm;
      out.drift = std::max(out.drift, std::abs(tn - prev) / std::max(std::abs(tn), 1e-300));
    }
    out.levels.push_back({N, tn});
  }
  const Grid g(n, levels.front(), half_width);
  const PhaseSymbol sym = product_phase_symbol(a, b, g);
  const KernelMatrix base = quantize(sym, tau0);
  std::vector<double> xs, ys;
  for (double h : steps) {
    const Endo tau = classify_endo(tau0.matrix + h * Eigen::MatrixXd::Identity(n, n));
    if (!tau.in_u()) throw ClassificationError("cordes_check: path leaves U");
    KernelMatrix diff = quantize(sym, tau);
    diff.values -= base.values;
    const double d = schatten(diff, {1.0}).norm(1.0);
    out.steps.push_back({h, d});
    xs.push_back(std::abs(h));
    ys.push_back(d);
  }
  if (std::count_if(ys.begin(), ys.end(), [](double d) { return d > 0.0; }) >= 2)
    out.slope = loglog_slope(xs, ys);
  return out;
}

double minimal_tcp2_order(int group_dim) { return (group_dim / 2 + 1) / 2.0; }

namespace {

void check_arity(const PhaseSymbol& a, std::size_t k, const char* who) {
  if (a.groups().size() != k)
    throw ShapeError(std::string(who) + ": orders do not match the decomposition arity");
}

// Squared norms of the group components of a vector.
std::vector<double> group_norms2(const Point& v, const std::vector<int>& groups) {
  std::vector<double> out;
  int offset = 0;
  for (int d : groups) {
    out.push_back(v.segment(offset, d).squaredNorm());
    offset += d;
  }
  return out;
}

bool is_half_integer(double v) { return v >= 0.0 && std::abs(2.0 * v - std::round(2.0 * v)) < 1e-12; }

std::vector<RatioRow> ratio_rows(const PhaseSymbol& a, double p, double denominator,
                                 const std::vector<Endo>& taus, bool use_op_norm = false) {
  std::vector<RatioRow> rows;
  for (const Endo& tau : taus) {
    RatioRow row{tau, 0.0, denominator, 0.0, false};
    const SchattenReport r = schatten(quantize(a, tau), {p});
    row.numerator = use_op_norm ? r.op_norm() : r.norm(p);
    if (denominator == 0.0) {
      row.skipped = true;
      row.ratio = std::nan("");
    } else {
      row.ratio = row.numerator / denominator;
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

PhaseSymbol mixed_derivative_symbol(const PhaseSymbol& a, const std::vector<double>& t,
                                    const std::vector<double>& s) {
  const std::vector<int> groups = a.groups();
  if (t.size() != groups.size() || s.size() != groups.size())
    throw ShapeError("mixed_derivative_symbol: orders do not match the decomposition arity");
  for (std::size_t j = 0; j < groups.size(); ++j)
    if (!is_half_integer(t[j]) || !is_half_integer(s[j]))
      throw DomainError("mixed_derivative_symbol: 2t_j and 2s_j must be nonnegative integers");
  return apply_phase_multiplier(a, [&](const Point& xi, const Point& eta) {
    const auto nx = group_norms2(xi, groups), np = group_norms2(eta, groups);
    double m = 1.0;
    for (std::size_t j = 0; j < groups.size(); ++j)
      m *= std::pow(1.0 + nx[j], 2.0 * t[j]) * std::pow(1.0 + np[j], 2.0 * s[j]);
    return m;
  });
}

std::vector<RatioRow> tcp2_check(const PhaseSymbol& a, const std::vector<double>& t,
                                 const std::vector<double>& s, double p,
                                 const std::vector<Endo>& taus) {
  if (!(p >= 1.0) || std::isinf(p)) throw DomainError("tcp2_check: requires 1 <= p < infinity");
  const std::vector<int> groups = a.groups();
  check_arity(a, t.size(), "tcp2_check");
  for (std::size_t j = 0; j < groups.size(); ++j)
    if (!(t[j] > groups[j] / 4.0) || !(s[j] > groups[j] / 4.0))
      throw HypothesisError("tcp2_check: requires t_j, s_j > dim X_j / 4");
  const double c = lp_norm(mixed_derivative_symbol(a, t, s), p);
  return ratio_rows(a, p, c, taus);
}

double mixed_seminorm(const PhaseSymbol& a, const MixedSeminormSpec& spec) {
  const std::vector<int> groups = a.groups();
  if (spec.t.size() != groups.size() || spec.s.size() != groups.size())
    throw ShapeError("mixed_seminorm: orders do not match the decomposition arity");
  const int n = a.grid_x.dim();
  // Enumerate the box group by group.
  std::vector<std::vector<MultiIndex>> per_group_x, per_group_p;
  for (std::size_t j = 0; j < groups.size(); ++j) {
    per_group_x.push_back(multi_indices_up_to(groups[j], spec.t[j]));
    per_group_p.push_back(multi_indices_up_to(groups[j], spec.s[j]));
  }
  double best = 0.0;
  MultiIndex alpha(n), beta(n);
  std::function<void(std::size_t, int)> rec = [&](std::size_t j, int offset) {
    if (j == groups.size()) {
      best = std::max(best, lp_norm(phase_derivative(a, alpha, beta), spec.p));
      return;
    }
    for (const auto& ax : per_group_x[j])
      for (const auto& bp : per_group_p[j]) {
        for (int i = 0; i < groups[j]; ++i) {
          alpha[offset + i] = ax[i];
          beta[offset + i] = bp[i];
        }
        rec(j + 1, offset + groups[j]);
      }
  };
  rec(0, 0);
  return best;
}

std::vector<int> cv_orders(const PhaseSymbol& a) {
  std::vector<int> out;
  for (int d : a.groups()) out.push_back(2 * (d / 2 + 1));
  return out;
}

std::vector<RatioRow> cv_check(const PhaseSymbol& a, const std::vector<Endo>& taus) {
  const std::vector<int> orders = cv_orders(a);
  const double semi = mixed_seminorm(a, {kInfinity, orders, orders});
  return ratio_rows(a, 2.0, semi, taus, true);
}

double phase_sobolev_norm(const PhaseSymbol& a, double s, double p) {
  return lp_norm(apply_phase_multiplier(a, [s](const Point& xi, const Point& eta) {
                   return std::pow(1.0 + xi.squaredNorm() + eta.squaredNorm(), s / 2.0);
                 }),
                 p);
}

double interpolation_exponent(double mu, int n, double p) {
  return 2.0 * mu * n * std::abs(1.0 - 2.0 / p);
}

std::vector<RatioRow> sobolev_phase_check(const PhaseSymbol& a, double s, double p,
                                          const std::vector<Endo>& taus) {
  if (!(p >= 1.0)) throw DomainError("sobolev_phase_check: requires p >= 1");
  return ratio_rows(a, p, phase_sobolev_norm(a, s, p), taus);
}

}  // namespace taupsd
