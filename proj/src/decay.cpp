#include "taupsd/decay.hpp"

#include <algorithm>
#include <cmath>

#include "taupsd/errors.hpp"
#include "taupsd/euclid.hpp"

namespace taupsd {

namespace {

GridFunction inverse_of(const Symbol& a, const Grid& g) {
  return inverse_fft(sample(g, Side::Frequency, [&](const Point& p) { return a(p); }));
}

}  // namespace

DecayProfile decay_profile(const Symbol& a, double m, int N, const Grid& g,
                           double exclusion_radius) {
  const int n = g.dim();
  if (!(m + n > 0.0)) throw DomainError("decay_profile: requires m + n > 0");
  const GridFunction f = inverse_of(a, g);
  DecayProfile out;
  out.exclusion_radius = exclusion_radius > 0.0 ? exclusion_radius : g.spacing();
  const double cut = out.exclusion_radius * (1.0 - 1e-12);
  for (std::size_t k = 0; k < g.size(); ++k) {
    const Point x = g.point(k);
    const double r = x.norm();
    if (r < cut) continue;
    const double bound = std::pow(bracket(x), -N) * (1.0 + std::pow(r, -m - n));
    const double measured = std::abs(f.values[k]);
    out.rows.push_back({r, measured, bound, measured / bound});
    out.max_profile = std::max(out.max_profile, measured / bound);
  }
  return out;
}

double l1_check(const Symbol& a, double m, const Grid& g) {
  if (!(m < 0.0)) throw DomainError("l1_check: requires m < 0");
  return lp_norm(inverse_of(a, g), 1.0);
}

double weighted_l2_check(const Symbol& a, const Symbol& b, double m, const Grid& g) {
  if (!(m < -g.dim() / 2.0)) throw DomainError("weighted_l2_check: requires m < -n/2");
  GridFunction f = inverse_of(a, g);
  for (std::size_t k = 0; k < g.size(); ++k) f.values[k] *= b(g.point(k));
  return l2_norm(f);
}

}  // namespace taupsd
