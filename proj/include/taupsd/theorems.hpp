#pragma once

#include <vector>

#include "taupsd/phase.hpp"
#include "taupsd/schatten.hpp"

namespace taupsd {

struct HsRow {
  Endo tau;
  double hs_norm = 0.0;    // ||quantize(a, tau)||_2
  double target = 0.0;     // (2 pi)^{-n/2} ||a||_{L^2}
  double ratio = 0.0;      // hs_norm / ||a||_{L^2}
  double rel_error = 0.0;  // |hs_norm - target| / target (0 when both vanish)
};

std::vector<HsRow> hs_identity_check(const PhaseSymbol& a, const std::vector<Endo>& taus);

struct CordesLevel {
  int points_per_axis = 0;
  double trace_norm = 0.0;
};

struct CordesStep {
  double step = 0.0;            // h in tau0 + h * identity
  double trace_distance = 0.0;  // ||A(tau0 + h) - A(tau0)||_1
};

struct CordesResult {
  Endo tau0;
  std::vector<CordesLevel> levels;
  double drift = 0.0;  // largest relative change between consecutive levels
  std::vector<CordesStep> steps;
  double slope = 0.0;  // log-log slope of trace_distance against h, 0 when the distances vanish
};

/// Trace norms of the quantization of g = F^{-1}a (x) Fb at tau0 on each
/// grid level (N points per axis, half width L), and trace-norm distances
/// along tau0 + h * identity on the first level. Throws HypothesisError
/// unless s, t > n and a, b carry degrees <= -t, -s.
CordesResult cordes_check(const Symbol& a, const Symbol& b, double s, double t, const Endo& tau0,
                          const std::vector<double>& steps, const std::vector<int>& levels,
                          double half_width);

/// Smallest order t with 2t integer and t > d/4.
double minimal_tcp2_order(int group_dim);

/// prod_j (1 - Lap_{X_j})^{2 t_j} (1 - Lap_{X_j*})^{2 s_j} a, applied spectrally.
/// Each 2 t_j, 2 s_j must be a nonnegative integer.
PhaseSymbol mixed_derivative_symbol(const PhaseSymbol& a, const std::vector<double>& t,
                                    const std::vector<double>& s);

struct RatioRow {
  Endo tau;
  double numerator = 0.0;
  double denominator = 0.0;
  double ratio = 0.0;
  bool skipped = false;  // 0/0
};

/// ||a^tau||_p / ||c||_{L^p} with c = mixed_derivative_symbol(a, t, s).
std::vector<RatioRow> tcp2_check(const PhaseSymbol& a, const std::vector<double>& t,
                                 const std::vector<double>& s, double p,
                                 const std::vector<Endo>& taus);

struct MixedSeminormSpec {
  double p = 2.0;
  std::vector<int> t;  // x-side order per group
  std::vector<int> s;  // p-side order per group
};

/// max over |alpha_j| <= t_j, |beta_j| <= s_j of ||d_x^alpha d_p^beta a||_{L^p}.
double mixed_seminorm(const PhaseSymbol& a, const MixedSeminormSpec& spec);

/// The orders 2 m_j, m_j = [dim X_j / 2] + 1.
std::vector<int> cv_orders(const PhaseSymbol& a);

/// Operator norm of a^tau over |a|_{inf, 2m_1, ..., 2m_k}.
std::vector<RatioRow> cv_check(const PhaseSymbol& a, const std::vector<Endo>& taus);

/// ||(1 - Lap_S)^{s/2} a||_{L^p(S)} over the whole phase space.
double phase_sobolev_norm(const PhaseSymbol& a, double s, double p);

/// 2 mu n |1 - 2/p|.
double interpolation_exponent(double mu, int n, double p);

/// ||a^tau||_p / ||a||_{H_p^s}.
std::vector<RatioRow> sobolev_phase_check(const PhaseSymbol& a, double s, double p,
                                          const std::vector<Endo>& taus);

}  // namespace taupsd
