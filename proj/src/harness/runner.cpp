#include "taupsd/harness/runner.hpp"

#include <chrono>
#include <cmath>
#include <map>
#include <numbers>
#include <random>

#include "taupsd/decay.hpp"
#include "taupsd/errors.hpp"
#include "taupsd/harness/corpus.hpp"
#include "taupsd/harness/io.hpp"
#include "taupsd/partition.hpp"
#include "taupsd/reference.hpp"
#include "taupsd/sobolev.hpp"
#include "taupsd/theorems.hpp"
#include "taupsd/version.hpp"

namespace taupsd::harness {

namespace {

using Json = nlohmann::json;
constexpr double kPi = std::numbers::pi;

std::string tag(const std::string& check, std::initializer_list<std::string> parts) {
  std::string s = check + "[";
  bool first = true;
  for (const auto& p : parts) {
    s += (first ? "" : ";") + p;
    first = false;
  }
  return s + "]";
}

std::string ntag(int n) { return "n=" + std::to_string(n); }
std::string Ntag(int N) { return "N=" + std::to_string(N); }
std::string ttag(const std::string& label) { return "tau=" + label; }

double rel_drift(double a, double b) { return std::abs(b - a) / std::max(std::abs(b), 1e-300); }

// Order used by the kernel lemmas for a symbol of degree d: -d, or n + 1
// for Schwartz members.
double kernel_order(const Symbol& a, int n) { return std::isinf(a.degree()) ? n + 1.0 : -a.degree(); }

std::vector<double> dyadic_steps(int kmin, int kmax) {
  std::vector<double> out;
  for (int k = kmin; k <= kmax; ++k) out.push_back(std::ldexp(1.0, -k));
  return out;
}

std::filesystem::path dump_dir(const ExperimentConfig& c) {
  return std::filesystem::path(c.output.empty() ? "." : c.output) / "dumps";
}

// ---------------------------------------------------------------------------

void run_hs_identity(const ExperimentConfig& c, RunReport& r) {
  std::vector<GridSpec> grids = {c.grid};
  grids.insert(grids.end(), c.extra_grids.begin(), c.extra_grids.end());
  Json table = Json::array();
  for (const GridSpec& gs : grids) {
    const Grid g = gs.grid();
    const int n = g.dim();
    const auto taus = c.taus_for(n);
    if (taus.empty()) continue;
    const double constant = std::pow(2.0 * kPi, -n / 2.0);
    std::vector<Endo> endos;
    for (const auto& t : taus) endos.push_back(t.second);
    for (const auto& name : c.symbols) {
      const PhaseSymbol a = resolve_phase(name, g);
      const auto rows = hs_identity_check(a, endos);
      double lo = kInfinity, hi = 0.0;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        const std::string key = tag("", {name, ttag(taus[i].first), ntag(n)});
        r.info("hs_ratio" + key, rows[i].ratio);
        r.at_most("hs_identity" + key, std::abs(rows[i].ratio - constant) / constant, tol::kHsIdentityRel);
        lo = std::min(lo, rows[i].hs_norm);
        hi = std::max(hi, rows[i].hs_norm);
        table.push_back({{"symbol", name}, {"tau", taus[i].first}, {"grid", grid_json(g)},
                         {"hs_norm", rows[i].hs_norm}, {"target", rows[i].target},
                         {"ratio", rows[i].ratio}, {"rel_error", rows[i].rel_error}});
      }
      const double mean = 0.5 * (lo + hi);
      r.at_most(tag("hs_tau_spread", {name, ntag(n)}), mean > 0 ? (hi - lo) / mean : 0.0,
                tol::kHsTauSpread);
    }
  }
  r.details["hs_identity"] = table;

  // Error under refinement in N on the primary grid's dimension and width.
  const std::vector<int> levels = c.integers("refinement_levels", {});
  if (levels.size() >= 2) {
    Json ref = Json::array();
    const auto taus = c.taus_for(c.grid.dim);
    std::vector<Endo> endos;
    for (const auto& t : taus) endos.push_back(t.second);
    for (const auto& name : c.symbols) {
      std::vector<double> errs;
      for (int N : levels) {
        const PhaseSymbol a = resolve_phase(name, Grid(c.grid.dim, N, c.grid.half_width));
        double worst = 0.0;
        for (const auto& row : hs_identity_check(a, endos)) worst = std::max(worst, row.rel_error);
        errs.push_back(worst);
        ref.push_back({{"symbol", name}, {"N", N}, {"max_rel_error", worst}});
      }
      // Non-increasing until the error reaches roundoff.
      double excess = 0.0;
      for (std::size_t k = 1; k < errs.size(); ++k)
        if (errs[k] > tol::kRoundoffFloor) excess = std::max(excess, errs[k] - errs[k - 1]);
      r.at_most(tag("hs_refinement_increase", {name}), excess, 0.0);
      r.info(tag("hs_refinement_factor", {name}), errs.back() > 0 ? errs.front() / errs.back() : kInfinity);
    }
    r.details["hs_refinement"] = ref;
  }
}

void run_factorize(const ExperimentConfig& c, RunReport& r) {
  const Grid g = c.grid.grid();
  const int n = g.dim();
  std::vector<std::pair<std::string, std::string>> pairs;
  if (c.flag("corpus_pairs", false)) {
    const auto members = admissible_kernel_symbols(n);
    for (const auto& a : members)
      for (const auto& b : members) pairs.emplace_back(a, b);
  } else {
    const auto& bs = c.symbols_b.empty() ? c.symbols : c.symbols_b;
    for (const auto& a : c.symbols)
      for (const auto& b : bs) pairs.emplace_back(a, b);
  }
  Json table = Json::array();
  double worst = 0.0;
  int count = 0;
  for (const auto& [an, bn] : pairs) {
    const Symbol a = resolve_symbol(an, Space::XStar, n), b = resolve_symbol(bn, Space::X, n);
    const SmoothingParams params = SmoothingParams::midpoint(n, kernel_order(b, n), kernel_order(a, n));
    for (const auto& [label, tau] : c.taus_for(n))
      for (Factorization which : {Factorization::U1, Factorization::U0}) {
        if (which == Factorization::U1 ? !tau.in_u1() : !tau.in_u0()) continue;
        const double res = factorization_check(a, b, tau, params, which, g);
        worst = std::max(worst, res);
        ++count;
        r.at_most(tag("factorization", {an, bn, ttag(label), to_string(which)}), res,
                  tol::kFactorizationResidual);
        table.push_back({{"a", an}, {"b", bn}, {"tau", label}, {"class", to_string(which)},
                         {"s", params.s}, {"t", params.t}, {"m", params.m}, {"residual", res}});
      }
  }
  r.info("factorization_cases", count);
  r.at_most("factorization_max_residual", worst, tol::kFactorizationResidual);
  r.details["factorization"] = table;
}

void run_kernel(const ExperimentConfig& c, RunReport& r) {
  const Grid g = c.grid.grid();
  const int n = g.dim();
  const auto& bs = c.symbols_b.empty() ? c.symbols : c.symbols_b;
  const Symbol one = constant_symbol(1.0);
  Json table = Json::array();
  bool dumped = false;
  for (const auto& an : c.symbols)
    for (const auto& bn : bs) {
      const Symbol a = resolve_symbol(an, Space::XStar, n), b = resolve_symbol(bn, Space::X, n);
      const double fa = l2_norm(inverse_fft(sample(g, Side::Frequency, [&](const Point& p) { return a(p); })));
      const double fb = l2_norm(sample(g, Side::Space, [&](const Point& x) { return b(x); }));
      for (const auto& [label, tau] : c.taus_for(n)) {
        const KernelMatrix k = kernel_ab(a, b, tau, g);
        r.within_rel(tag("kernel_hs", {an, bn, ttag(label)}), k.hs_norm(), fa * fb, tol::kKernelHsRel);
        const double scale = std::max(k.values.norm(), 1e-300);
        if (tau.in_u1())
          r.at_most(tag("k1_identity", {an, bn, ttag(label)}),
                    (kernel_k1(a, b, one, tau, 0.0, g).values - k.values).norm() / scale, tol::kRoundoffFloor);
        if (tau.in_u0())
          r.at_most(tag("k0_identity", {an, bn, ttag(label)}),
                    (kernel_k0(a, b, one, tau, 0.0, g).values - k.values).norm() / scale, tol::kRoundoffFloor);
        const SmoothingParams params = SmoothingParams::midpoint(n, kernel_order(b, n), kernel_order(a, n));
        const Symbol cs = bracket_power_symbol(params.s / 2.0);
        Json row = {{"a", an}, {"b", bn}, {"tau", label}, {"hs", k.hs_norm()}, {"target", fa * fb}};
        for (int N : c.levels) {
          const Grid gl(n, N, g.half_width());
          if (tau.in_u1()) row["hs_k1"][std::to_string(N)] = kernel_k1(a, b, cs, tau, params.m, gl).hs_norm();
          if (tau.in_u0()) row["hs_k0"][std::to_string(N)] = kernel_k0(a, b, cs, tau, params.m, gl).hs_norm();
        }
        for (const char* key : {"hs_k1", "hs_k0"}) {
          if (!row.contains(key) || row[key].size() < 2) continue;
          double drift = 0.0, prev = -1.0;
          for (const auto& [N, v] : row[key].items()) {
            if (prev >= 0) drift = std::max(drift, rel_drift(prev, v.get<double>()));
            prev = v.get<double>();
          }
          r.at_most(tag(std::string(key) + "_drift", {an, bn, ttag(label)}), drift, tol::kSobolevDrift, false);
        }
        table.push_back(row);
        if (c.flag("dump", false) && !dumped) {
          write_kernel(dump_dir(c) / "kernel_ab", k);
          dumped = true;
        }
      }
    }
  r.details["kernels"] = table;

  // Smoothing factor K_{s,m}: HS refinement and adjoint structure.
  const double s = c.number("smoothing_s", n + 1.0), m = c.number("smoothing_m", n / 2.0 + 0.5);
  const std::vector<int> levels = c.levels.empty() ? std::vector<int>{g.points_per_axis()} : c.levels;
  double prev = -1.0, drift = 0.0;
  for (int N : levels) {
    const Grid gl(n, N, g.half_width());
    const KernelMatrix f = smoothing_factor(s, m, gl);
    r.info(tag("smoothing_hs", {Ntag(N)}), f.hs_norm());
    if (prev >= 0) drift = std::max(drift, rel_drift(prev, f.hs_norm()));
    prev = f.hs_norm();
  }
  if (levels.size() >= 2) r.at_most("smoothing_hs_drift", drift, 0.02, false);
  // Adjoint: (1 - Lap)^{-m/2} <Q>^{-s/2} assembled directly versus K_{s,m}^*.
  const KernelMatrix f = smoothing_factor(s, m, g);
  const Eigen::VectorXcd w = [&] {
    Eigen::VectorXcd v(static_cast<Eigen::Index>(g.size()));
    for (std::size_t k = 0; k < g.size(); ++k) v[static_cast<Eigen::Index>(k)] = std::pow(bracket(g.point(k)), -s / 2.0);
    return v;
  }();
  const Eigen::MatrixXcd direct =
      apply_bessel_columns(Eigen::MatrixXcd(w.asDiagonal()), -m, g);
  r.at_most("smoothing_adjoint", (direct - f.operator_matrix().adjoint()).norm() / direct.norm(),
            tol::kRoundoffFloor * 100);
  const double stronger = smoothing_factor(s, m + 1.0, g).hs_norm();
  r.at_most("smoothing_monotone_in_m", stronger - f.hs_norm(), 0.0, false);
}

void run_tau_scan(const ExperimentConfig& c, RunReport& r) {
  const Grid g = c.grid.grid();
  const int n = g.dim();
  const Symbol a = resolve_symbol(c.symbols.at(0), Space::XStar, n);
  const Symbol b = resolve_symbol(c.symbols_b.empty() ? c.symbols.at(0) : c.symbols_b.at(0), Space::X, n);
  const SmoothingParams params = SmoothingParams::midpoint(n, kernel_order(b, n), kernel_order(a, n));
  const Symbol cs = bracket_power_symbol(params.s / 2.0);
  const std::vector<double> steps = c.numbers("steps", dyadic_steps(3, 10));
  const bool schwartz = a.schwartz() && b.schwartz();
  Json table = Json::array();
  for (const auto& [label, tau0] : c.taus_for(n)) {
    const Factorization which = tau0.in_u1() ? Factorization::U1 : Factorization::U0;
    std::vector<Endo> path;
    for (double h : steps) path.push_back(classify_endo(tau0.matrix + h * Eigen::MatrixXd::Identity(n, n)));
    const ContinuityScan scan = tau_continuity_scan(a, b, cs, tau0, path, params.m, which, g);
    for (const auto& row : scan.rows)
      table.push_back({{"tau0", label}, {"class", to_string(which)}, {"distance", row.distance_to_base},
                       {"hs_distance", row.hs_distance}});
    if (schwartz) r.at_least(tag("k_continuity_slope", {ttag(label), to_string(which)}), scan.slope, tol::kContinuitySlope);
    else r.info(tag("k_continuity_slope", {ttag(label), to_string(which)}), scan.slope);
    r.at_most(tag("k_continuity_vanishing", {ttag(label)}),
              scan.rows.back().hs_distance - scan.rows.front().hs_distance, 0.0);
  }
  r.details["continuity"] = table;
}

void run_quantize(const ExperimentConfig& c, RunReport& r) {
  const Grid g = c.grid.grid();
  const int n = g.dim();
  const auto& bs = c.symbols_b.empty() ? c.symbols : c.symbols_b;
  const bool with_reference = g.size() <= static_cast<std::size_t>(c.integer("reference_cap", 128));
  for (const auto& an : c.symbols)
    for (const auto& bn : bs) {
      const Symbol a = resolve_symbol(an, Space::XStar, n), b = resolve_symbol(bn, Space::X, n);
      const PhaseSymbol sym = product_phase_symbol(a, b, g);
      for (const auto& [label, tau] : c.taus_for(n)) {
        const KernelMatrix q = quantize(sym, tau);
        const KernelMatrix k = kernel_ab(a, b, tau, g);
        const double scale = std::max(k.values.norm(), 1e-300);
        r.at_most(tag("quantize_vs_kernel", {an, bn, ttag(label)}), (q.values - k.values).norm() / scale,
                  tol::kQuantizeConsistency);
        if (with_reference)
          r.at_most(tag("quantize_vs_reference", {an, bn, ttag(label)}),
                    (q.values - reference::quantize(sym, tau).values).norm() / scale,
                    tol::kQuantizeConsistency);
      }
    }
}

void run_schatten(const ExperimentConfig& c, RunReport& r) {
  const Grid g = c.grid.grid();
  const int n = g.dim();
  Json reports = Json::array();
  for (const auto& name : c.symbols) {
    const PhaseSymbol a = resolve_phase(name, g);
    for (const auto& [label, tau] : c.taus_for(n)) {
      const KernelMatrix k = quantize(a, tau);
      const SchattenReport rep = schatten(k, c.p_list);
      const std::string id = name + ";" + ttag(label);
      r.at_most(tag("schatten_monotone", {id}), monotonicity_violation(rep), tol::kSchattenOrder);
      r.at_most(tag("schatten_log_convex", {id}), log_convexity_violation(rep), tol::kSchattenOrder);
      const double frob = k.operator_matrix().norm();
      r.at_most(tag("schatten_frobenius", {id}), std::abs(rep.norm(2.0) - frob) / std::max(frob, 1e-300),
                tol::kFrobeniusConsistency);
      Json js = schatten_json(rep);
      js["symbol"] = name;
      js["tau_label"] = label;
      reports.push_back(js);
    }
  }
  r.details["reports"] = reports;

  // Oracles on the same grid.
  std::mt19937_64 rng(c.seed);
  std::normal_distribution<double> normal;
  const Symbol f = gaussian_symbol(1.0), gm = resolve_symbol("modgauss(lambda=2)", Space::X, n);
  KernelMatrix rank1;
  rank1.grid = g;
  rank1.weight = g.cell_volume();
  const auto size = static_cast<Eigen::Index>(g.size());
  Eigen::VectorXcd fx(size), gy(size);
  for (Eigen::Index k = 0; k < size; ++k) {
    fx[k] = f(g.point(k));
    gy[k] = gm(g.point(k)) * cplx(1.0, 0.25 * normal(rng));
  }
  rank1.values = fx * gy.transpose();
  const SchattenReport rr = schatten(rank1, {1.0, 2.0});
  const double expect = std::sqrt(g.cell_volume()) * fx.norm() * std::sqrt(g.cell_volume()) * gy.norm();
  r.at_most("rank_one_top", std::abs(rr.op_norm() - expect) / expect, tol::kRankOneOracle);
  r.at_most("rank_one_rest", rr.singular_values.size() > 1 ? rr.singular_values[1] / expect : 0.0,
            tol::kRankOneOracle);

  KernelMatrix ident;
  ident.grid = g;
  ident.weight = g.cell_volume();
  ident.values = Eigen::MatrixXcd::Identity(size, size) / g.cell_volume();
  const SchattenReport ir = schatten(ident, c.p_list);
  double worst = 0.0;
  for (double p : c.p_list) {
    const double expect_p = std::isinf(p) ? 1.0 : std::pow(static_cast<double>(size), 1.0 / p);
    worst = std::max(worst, std::abs(ir.norm(p) - expect_p) / expect_p);
  }
  r.at_most("weighted_identity_norms", worst, tol::kFrobeniusConsistency);

  // FFT versus direct summation on random input (grids up to 64 per axis).
  const int Nd = std::min(g.points_per_axis(), 64);
  const Grid gd(n, Nd, g.half_width());
  GridFunction rnd(gd, Side::Space);
  for (auto& v : rnd.values) v = {normal(rng), normal(rng)};
  const GridFunction fast = forward_fft(rnd), slow = reference::direct_forward(rnd);
  double diff = 0.0;
  for (std::size_t k = 0; k < gd.size(); ++k) diff = std::max(diff, std::abs(fast.values[k] - slow.values[k]));
  r.at_most(tag("fft_vs_direct_dft", {Ntag(Nd)}), diff, tol::kDftOraclePerPoint * std::pow(Nd, n));
  const GridFunction back = inverse_fft(fast);
  double rt = 0.0;
  for (std::size_t k = 0; k < gd.size(); ++k) rt = std::max(rt, std::abs(back.values[k] - rnd.values[k]));
  r.at_most(tag("fft_round_trip", {Ntag(Nd)}), rt, tol::kFftRoundTrip);
}

void run_cordes(const ExperimentConfig& c, RunReport& r) {
  const int n = c.grid.dim;
  const std::vector<int> levels = c.levels.empty() ? std::vector<int>{c.grid.points_per_axis, 2 * c.grid.points_per_axis} : c.levels;
  const std::vector<double> steps = c.numbers("steps", dyadic_steps(3, 10));
  const auto& bs = c.symbols_b.empty() ? c.symbols : c.symbols_b;
  if (bs.size() != c.symbols.size()) throw UsageError("config.symbols_b: must pair one-to-one with config.symbols");
  Json table = Json::array();
  for (std::size_t i = 0; i < c.symbols.size(); ++i) {
    const Symbol a = resolve_symbol(c.symbols[i], Space::XStar, n);
    const Symbol b = resolve_symbol(bs[i], Space::X, n);
    const double t = c.number("t", kernel_order(a, n)), s = c.number("s", kernel_order(b, n));
    const std::string pair = c.symbols[i] + "," + bs[i];
    for (const auto& [label, tau0] : c.taus_for(n)) {
      const CordesResult res = cordes_check(a, b, s, t, tau0, steps, levels, c.grid.half_width);
      for (const auto& lv : res.levels) r.info(tag("trace_norm", {pair, ttag(label), Ntag(lv.points_per_axis)}), lv.trace_norm);
      r.at_most(tag("trace_norm_drift", {pair, ttag(label)}), res.drift, tol::kCordesDrift);
      r.at_least(tag("trace_continuity_slope", {pair, ttag(label)}), res.slope, tol::kContinuitySlope);
      Json steps_js = Json::array();
      for (const auto& st : res.steps) steps_js.push_back({{"h", st.step}, {"trace_distance", st.trace_distance}});
      Json levels_js = Json::array();
      for (const auto& lv : res.levels) levels_js.push_back({{"N", lv.points_per_axis}, {"trace_norm", lv.trace_norm}});
      table.push_back({{"pair", pair}, {"s", s}, {"t", t}, {"tau0", label}, {"levels", levels_js},
                       {"drift", res.drift}, {"steps", steps_js}, {"slope", res.slope}});
    }
  }
  r.details["cordes"] = table;
}

// Growth of ratios across a family: max over the family of ratio / baseline,
// per tau, with the first symbol as the baseline.
void family_growth(RunReport& r, const std::string& check, const std::vector<std::string>& symbols,
                   const std::vector<std::pair<std::string, Endo>>& taus,
                   const std::map<std::pair<std::string, std::string>, double>& ratios) {
  for (const auto& [label, tau] : taus) {
    const double base = ratios.at({symbols.front(), label});
    double growth = 0.0;
    for (const auto& s : symbols) growth = std::max(growth, ratios.at({s, label}) / base);
    r.at_most(tag(check, {ttag(label)}), growth, tol::kFamilyGrowth, false);
  }
}

void run_tcp2(const ExperimentConfig& c, RunReport& r) {
  const Grid g = c.grid.grid();
  const int n = g.dim();
  const auto taus = c.taus_for(n);
  std::vector<Endo> endos;
  for (const auto& t : taus) endos.push_back(t.second);
  Json table = Json::array();
  for (double p : c.p_list) {
    std::map<std::pair<std::string, std::string>, double> ratios;
    for (const auto& name : c.symbols) {
      const PhaseSymbol a = resolve_phase(name, g);
      std::vector<double> t, s;
      for (int d : a.groups()) {
        t.push_back(minimal_tcp2_order(d));
        s.push_back(minimal_tcp2_order(d));
      }
      t = c.numbers("t", t);
      s = c.numbers("s", s);
      const auto rows = tcp2_check(a, t, s, p, endos);
      for (std::size_t i = 0; i < rows.size(); ++i) {
        const std::string id = tag("tcp2_ratio", {name, ttag(taus[i].first), "p=" + format_number(p)});
        if (rows[i].skipped) {
          r.info(id, std::nan(""));
          continue;
        }
        r.info(id, rows[i].ratio);
        ratios[{name, taus[i].first}] = rows[i].ratio;
        table.push_back({{"symbol", name}, {"tau", taus[i].first}, {"p", p}, {"schatten", rows[i].numerator},
                         {"c_norm", rows[i].denominator}, {"ratio", rows[i].ratio}});
        if (p == 2.0) {
          const double hs = std::pow(2.0 * kPi, -n / 2.0) * lp_norm(a, 2.0);
          r.within_rel(tag("tcp2_hs_consistency", {name, ttag(taus[i].first)}), rows[i].numerator, hs,
                       tol::kHsIdentityRel);
        }
      }
    }
    family_growth(r, "tcp2_growth[p=" + format_number(p) + "]", c.symbols, taus, ratios);
  }
  r.details["tcp2"] = table;
}

void run_cv(const ExperimentConfig& c, RunReport& r) {
  const Grid g = c.grid.grid();
  const int n = g.dim();
  const auto taus = c.taus_for(n);
  std::vector<Endo> endos;
  for (const auto& t : taus) endos.push_back(t.second);
  std::map<std::pair<std::string, std::string>, double> ratios;
  Json table = Json::array();
  for (const auto& name : c.symbols) {
    const PhaseSymbol a = resolve_phase(name, g);
    const auto rows = cv_check(a, endos);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      r.info(tag("cv_ratio", {name, ttag(taus[i].first)}), rows[i].ratio);
      ratios[{name, taus[i].first}] = rows[i].ratio;
      table.push_back({{"symbol", name}, {"tau", taus[i].first}, {"op_norm", rows[i].numerator},
                       {"seminorm", rows[i].denominator}, {"ratio", rows[i].ratio}});
    }
  }
  for (const auto& [label, tau] : taus) {
    const double base = ratios.at({c.symbols.front(), label});
    double growth = 0.0;
    for (const auto& s : c.symbols) growth = std::max(growth, ratios.at({s, label}) / base);
    r.at_most(tag("cv_growth", {ttag(label)}), growth, tol::kFamilyGrowth, false);
  }
  r.details["cv"] = table;
}

void run_sobolev(const ExperimentConfig& c, RunReport& r) {
  const int n = c.grid.dim;
  const std::vector<int> levels = c.levels.empty() ? std::vector<int>{c.grid.points_per_axis} : c.levels;
  const std::vector<double> ms = c.numbers("m", {1.5, 2.5});
  const double radius = c.number("r", 1.0);
  Json table = Json::array();
  for (const auto& name : c.symbols) {
    const Symbol f = resolve_symbol(name, Space::X, n);
    for (double m : ms) {
      double prev = -1.0, drift = 0.0;
      for (int N : levels) {
        const Grid g(n, N, c.grid.half_width);
        const GridFunction fx = sample(g, Side::Space, [&](const Point& x) { return f(x); });
        const double fourier = sobolev_norm_fourier(fx, m);
        const double slob = sobolev_norm_slobodeckij(fx, m, radius);
        const double ratio = slob / fourier;
        r.in_range(tag("sobolev_ratio", {name, "m=" + format_number(m), Ntag(N)}), ratio,
                   tol::kSobolevRatioLow, tol::kSobolevRatioHigh);
        if (prev > 0) drift = std::max(drift, rel_drift(prev, ratio));
        prev = ratio;
        table.push_back({{"symbol", name}, {"m", m}, {"N", N}, {"fourier", fourier}, {"slobodeckij", slob},
                         {"ratio", ratio}});
      }
      if (levels.size() >= 2)
        r.at_most(tag("sobolev_ratio_drift", {name, "m=" + format_number(m)}), drift, tol::kSobolevDrift);
    }
  }
  r.details["dual_norms"] = table;

  // Phase-space H_p^s rows.
  if (c.options.contains("phase_symbols")) {
    const Grid g = c.grid.grid();
    std::vector<Endo> endos;
    const auto taus = c.taus_for(n);
    for (const auto& t : taus) endos.push_back(t.second);
    const double s = c.number("s", 2.0 * n + 1.0), mu = c.number("mu", 1.5);
    const std::vector<double> ps = c.p_list.empty() ? std::vector<double>{1.0, 2.0} : c.p_list;
    Json ptable = Json::array();
    for (const auto& js : c.options["phase_symbols"]) {
      const std::string name = js.get<std::string>();
      const PhaseSymbol a = resolve_phase(name, g);
      for (double p : ps) {
        for (const bool interp : {false, true}) {
          const double sv = interp ? interpolation_exponent(mu, n, p) : s;
          const auto rows = sobolev_phase_check(a, sv, p, endos);
          for (std::size_t i = 0; i < rows.size(); ++i) {
            const std::string id = tag(interp ? "sobolev_phase_interp" : "sobolev_phase",
                                       {name, ttag(taus[i].first), "p=" + format_number(p)});
            r.info(id, rows[i].ratio);
            if (p == 2.0)
              r.at_most(id + "_bound", rows[i].ratio, std::pow(2.0 * kPi, -n / 2.0) * (1.0 + tol::kHsIdentityRel));
            ptable.push_back({{"symbol", name}, {"tau", taus[i].first}, {"p", p}, {"s", sv},
                              {"schatten", rows[i].numerator}, {"sobolev", rows[i].denominator},
                              {"ratio", rows[i].ratio}});
          }
        }
      }
    }
    r.details["phase_sobolev"] = ptable;
  }
}

void run_decompose(const ExperimentConfig& c, RunReport& r) {
  const Grid g = c.grid.grid();
  const double T = c.number("T", 64.0);
  const int nodes = c.integer("quad_nodes", 400);
  const PartitionPair pp = build_partition(c.number("shape_param", 4.0));
  const int n = g.dim();

  r.at_most("partition_completeness", partition_completeness(pp, T, nodes, g), tol::kPartitionCompleteness);
  Point e1 = Point::Zero(n);
  e1[0] = 1.0;
  r.at_most("phi_inner", std::abs(pp.phi(Point(0.5 * e1)) - 1.0), 0.0);
  r.at_most("phi_outer", std::abs(pp.phi(Point(2.5 * e1))), 0.0);
  r.at_most("psi_outside_annulus", std::abs(pp.psi(Point(0.5 * e1))) + std::abs(pp.psi(Point(3.0 * e1))), 0.0);

  // d/dt phi(p/t) = psi(p/t)/t by central differences.
  std::mt19937_64 rng(c.seed);
  std::uniform_real_distribution<double> rp(0.0, 4.0), rt(0.6, 3.0);
  double fd = 0.0;
  const double delta = 1e-5;
  for (int k = 0; k < c.integer("fd_samples", 100); ++k) {
    const double p = rp(rng), t = rt(rng);
    const double lhs = (pp.phi_radial(p / (t + delta)) - pp.phi_radial(p / (t - delta))) / (2 * delta);
    fd = std::max(fd, std::abs(lhs - pp.psi_radial(p / t) / t));
  }
  r.at_most("partition_derivative_fd", fd, tol::kFiniteDifference);

  const std::vector<std::string> syms = c.symbols.empty() ? std::vector<std::string>{"bracket(m=-2)"} : c.symbols;
  Json table = Json::array();
  for (const auto& name : syms) {
    const Symbol a = resolve_symbol(name, Space::XStar, n);
    const double m = std::isinf(a.degree()) ? 0.0 : a.degree();
    const Reconstruction rec = dyadic_reconstruct(a, m, pp, T, nodes, g);
    double inner = 0.0, tail = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) {
      const Point p = g.freq_point(k);
      const double err = std::abs(rec.values.values[k] - a(p));
      double& slot = p.norm() <= T / 2.0 ? inner : tail;
      slot = std::max(slot, err);
    }
    r.at_most(tag("reconstruction", {name}), inner, tol::kReconstruction);
    r.info(tag("reconstruction_tail", {name}), tail);
    if (!rec.covered) r.at_least(tag("reconstruction_coverage", {name}), T / 2.0, g.max_frequency(), false);
    table.push_back({{"symbol", name}, {"max_error_inner", inner}, {"max_error_tail", tail}, {"covered", rec.covered},
                     {"warning", rec.warning}});
  }
  r.details["reconstruction"] = table;

  // Band pieces: constants over t and under grid doubling.
  const Symbol band = resolve_symbol(c.options.value("band_symbol", std::string("bracket(m=0)")), Space::XStar, n);
  const double bm = std::isinf(band.degree()) ? 0.0 : band.degree();
  const int M = c.integer("band_M", 2), Nexp = c.integer("band_N", 4);
  const Grid bg(n, c.integer("band_points", 2048), c.number("band_L", 20.0));
  const Grid bg2(n, 2 * bg.points_per_axis(), bg.half_width());
  Json bands = Json::array();
  double base = 0.0, growth = 0.0, drift = 0.0;
  for (double t : c.numbers("band_t", {1, 2, 4, 8, 16, 32, 64})) {
    const double c1 = band_term_decay(band, bm, pp, t, M, Nexp, bg).constant;
    const double c2 = band_term_decay(band, bm, pp, t, M, Nexp, bg2).constant;
    r.info(tag("band_constant", {"t=" + format_number(t)}), c1);
    if (base == 0.0) base = c1;
    growth = std::max(growth, c1 / base);
    // The sup over nodes only converges once the band scale 1/t spans a few nodes.
    if (t * bg.spacing() <= 0.25) drift = std::max(drift, rel_drift(c1, c2));
    else r.info(tag("band_constant_refinement_unresolved", {"t=" + format_number(t)}), rel_drift(c1, c2));
    bands.push_back({{"t", t}, {"constant", c1}, {"constant_doubled", c2}});
  }
  r.at_most("band_constant_growth", growth, tol::kFamilyGrowth, false);
  r.at_most("band_constant_refinement", drift, tol::kBandConstantDrift);
  r.details["band_terms"] = bands;
}

void run_decay(const ExperimentConfig& c, RunReport& r) {
  const int n = c.grid.dim;
  const std::vector<int> levels = c.levels.empty() ? std::vector<int>{c.grid.points_per_axis, 2 * c.grid.points_per_axis} : c.levels;
  const double L = c.grid.half_width;
  const int Nexp = c.integer("decay_N", 3);
  const double delta = c.number("exclusion_cells", 4.0) * (2.0 * L / levels.front());
  Json table = Json::array();
  for (const auto& name : c.symbols) {
    const Symbol a = resolve_symbol(name, Space::XStar, n);
    const double m = c.number("m", std::isinf(a.degree()) ? -1.0 : a.degree());
    if (c.flag("profile", true) && m + n > 0) {
      double prev = -1.0, drift = 0.0;
      for (int N : levels) {
        const DecayProfile prof = decay_profile(a, m, Nexp, Grid(n, N, L), delta);
        r.info(tag("decay_profile_max", {name, Ntag(N)}), prof.max_profile);
        if (prev > 0) drift = std::max(drift, rel_drift(prev, prof.max_profile));
        prev = prof.max_profile;
        table.push_back({{"symbol", name}, {"N", N}, {"profile_max", prof.max_profile}, {"exclusion", delta}});
      }
      r.at_most(tag("decay_profile_drift", {name}), drift, tol::kDecayDrift);
    }
    if (m < 0) {
      double prev = -1.0, drift = 0.0;
      for (int N : levels) {
        const double v = l1_check(a, m, Grid(n, N, L));
        r.info(tag("l1_norm", {name, Ntag(N)}), v);
        if (prev > 0) drift = std::max(drift, rel_drift(prev, v));
        prev = v;
      }
      // Domain enlargement at the finest spacing.
      const double wide = l1_check(a, m, Grid(n, 2 * levels.back(), 2 * L));
      drift = std::max(drift, rel_drift(prev, wide));
      r.at_most(tag("l1_cauchy", {name}), drift, tol::kL1Cauchy);
      if (name.rfind("gauss", 0) == 0 && n == 1) {
        // Positive transform: the L^1 norm equals a(0) = 1.
        r.within_rel(tag("l1_closed_form", {name}), wide, 1.0, 1e-6);
      }
    }
  }
  r.details["decay"] = table;
  if (c.options.contains("weight_b")) {
    const Symbol b = resolve_symbol(c.options["weight_b"].get<std::string>(), Space::X, n);
    for (const auto& name : c.symbols) {
      const Symbol a = resolve_symbol(name, Space::XStar, n);
      const double m = std::isinf(a.degree()) ? -(n + 1.0) : a.degree();
      if (!(m < -n / 2.0)) continue;
      double prev = -1.0, drift = 0.0;
      for (int N : levels) {
        const double v = weighted_l2_check(a, b, m, Grid(n, N, L));
        if (prev > 0) drift = std::max(drift, rel_drift(prev, v));
        prev = v;
      }
      r.info(tag("weighted_l2", {name}), prev);
      r.at_most(tag("weighted_l2_drift", {name}), drift, tol::kDecayDrift, false);
    }
  }
}

void run_bessel(const ExperimentConfig& c, RunReport& r) {
  const Grid g = c.grid.grid();
  const int n = g.dim();
  const double rr = c.number("r", 2.0);
  const GridFunction k = bessel_kernel(rr, g);
  const double delta = 1.0 / g.cell_volume();
  const std::size_t origin = [&] {
    MultiIndex mid(n, g.points_per_axis() / 2);
    return g.flatten(mid);
  }();

  GridFunction back = apply_multiplier(k, [rr](const Point& p) -> cplx { return std::pow(1.0 + p.squaredNorm(), rr / 2.0); });
  double rt = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i)
    rt = std::max(rt, std::abs(back.values[i] - (i == origin ? delta : 0.0)) / delta);
  r.at_most(tag("bessel_round_trip", {"r=" + format_number(rr)}), rt, tol::kBesselRoundTrip);

  double sym = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    MultiIndex idx = g.unflatten(i);
    for (auto& v : idx) v = (g.points_per_axis() - v) % g.points_per_axis();
    sym = std::max(sym, std::abs(k.values[i] - k.values[g.flatten(idx)]));
    scale = std::max(scale, std::abs(k.values[i]));
  }
  r.at_most("bessel_symmetry", sym / scale, tol::kRoundoffFloor);

  if (rr == 2.0 && n == 1) {
    double all = 0.0, punct = 0.0, far = 0.0, l1 = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double x = g.point(i)[0];
      const double err = std::abs(k.values[i] - std::exp(-std::abs(x)) / 2.0);
      all = std::max(all, err);
      if (i != origin) punct = std::max(punct, err);
      if (std::abs(x) >= 1.0) far = std::max(far, err);
      l1 += err * g.spacing();
    }
    r.at_most("bessel_closed_form_max", all, tol::kBesselPointwise);
    r.info("bessel_closed_form_max_off_origin", punct);
    r.info("bessel_closed_form_max_abs_x_ge_1", far);
    r.info("bessel_closed_form_l1", l1);
  }
  if (c.flag("dump", false)) write_grid_function(dump_dir(c) / "bessel_kernel", k);
}

void run_scaling(const ExperimentConfig& c, RunReport& r) {
  const Grid g = c.grid.grid();
  const int n = g.dim();
  const std::vector<double> ms = c.numbers("m", {0.5, 1.0});
  std::vector<double> eps;
  for (int k : c.integers("eps_exponents", {1, 2, 3, 4, 5, 6, 7, 8})) eps.push_back(std::ldexp(1.0, -k));
  Json table = Json::array();
  for (const auto& name : c.symbols) {
    const Symbol a = resolve_symbol(name, Space::X, n);
    for (double m : ms) {
      const auto rows = scaling_lemma_check(a, m, eps, g);
      std::vector<double> xs, ys;
      double top = 0.0;
      for (const auto& row : rows) {
        xs.push_back(row.eps);
        ys.push_back(row.sup_gap);
        top = std::max(top, row.sup_gap);
        table.push_back({{"symbol", name}, {"m", m}, {"eps", row.eps}, {"sup_gap", row.sup_gap}});
      }
      const std::string id = tag("scaling_slope", {name, "m=" + format_number(m)});
      if (top == 0.0) r.at_most(tag("scaling_gap_zero", {name, "m=" + format_number(m)}), top, 0.0);
      else r.at_least(id, loglog_slope(xs, ys), m - tol::kScalingSlopeMargin);
    }
  }
  r.details["scaling"] = table;

  if (c.options.contains("cutoff_symbol")) {
    const Symbol b = resolve_symbol(c.options["cutoff_symbol"].get<std::string>(), Space::X, n);
    const double rr = c.number("cutoff_r", b.degree() + 1.0);
    double prev = kInfinity, increase = 0.0;
    Json ctable = Json::array();
    for (double e : eps) {
      const Symbol be = cutoff_approximate(b, rr, e);
      const Symbol gap = linear_combination(1.0, be, -1.0, b);
      double sup = 0.0;
      for (const auto& alpha : multi_indices_up_to(n, 2)) sup = std::max(sup, seminorm(gap, rr, alpha, g).value);
      increase = std::max(increase, sup - prev);
      prev = sup;
      ctable.push_back({{"eps", e}, {"gap", sup}});
    }
    r.at_most("cutoff_gap_monotone", increase, 0.0, false);
    r.info("cutoff_gap_last", prev);
    r.details["cutoff"] = ctable;
  }
}

}  // namespace

bool uses_dense_matrices(Experiment e) {
  using E = Experiment;
  return e == E::Kernel || e == E::Factorize || e == E::TauScan || e == E::Quantize || e == E::Schatten ||
         e == E::Cordes || e == E::Tcp2 || e == E::Cv || e == E::HsIdentity;
}

RunReport run(const ExperimentConfig& c) {
  RunReport r;
  r.config = c.raw;
  r.provenance = {{"code_version", kVersion}, {"seed", c.seed}, {"experiment", to_string(c.experiment)}};
  const auto start = std::chrono::steady_clock::now();
  try {
    switch (c.experiment) {
      case Experiment::HsIdentity: run_hs_identity(c, r); break;
      case Experiment::Factorize: run_factorize(c, r); break;
      case Experiment::Kernel: run_kernel(c, r); break;
      case Experiment::TauScan: run_tau_scan(c, r); break;
      case Experiment::Quantize: run_quantize(c, r); break;
      case Experiment::Schatten: run_schatten(c, r); break;
      case Experiment::Cordes: run_cordes(c, r); break;
      case Experiment::Tcp2: run_tcp2(c, r); break;
      case Experiment::Cv: run_cv(c, r); break;
      case Experiment::Sobolev: run_sobolev(c, r); break;
      case Experiment::Decompose: run_decompose(c, r); break;
      case Experiment::Decay: run_decay(c, r); break;
      case Experiment::Bessel: run_bessel(c, r); break;
      case Experiment::Scaling: run_scaling(c, r); break;
    }
  } catch (const UsageError&) {
    throw;
  } catch (const std::exception& e) {
    r.rows.push_back({"error", std::nan(""), e.what(), 0.0, Status::Fail});
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

RunReport convergence_study(const ExperimentConfig& c, const std::vector<int>& levels, int cap) {
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (levels[i] < 2 || levels[i] % 2) throw UsageError("levels: every level must be a positive even integer");
    if (i > 0 && levels[i] <= levels[i - 1]) throw UsageError("levels: must be increasing");
    const double dim = std::pow(static_cast<double>(levels[i]), c.grid.dim);
    if (uses_dense_matrices(c.experiment) && dim > cap)
      throw PreconditionError("convergence_study: matrix dimension " + format_number(dim) +
                              " at N=" + std::to_string(levels[i]) + " exceeds the cap " + std::to_string(cap));
  }
  RunReport out;
  out.config = c.raw;
  out.provenance = {{"code_version", kVersion}, {"seed", c.seed}, {"experiment", to_string(c.experiment)},
                    {"levels", levels}};
  const auto start = std::chrono::steady_clock::now();
  std::vector<RunReport> runs;
  for (int N : levels) {
    ExperimentConfig lc = c;
    lc.grid.points_per_axis = N;
    runs.push_back(run(lc));
    out.details[std::to_string(N)] = runs.back().details;
    for (CheckRow row : runs.back().rows) {
      row.check = Ntag(N) + "/" + row.check;
      out.rows.push_back(row);
    }
  }
  for (std::size_t k = 1; k < runs.size(); ++k)
    for (const auto& row : runs[k].rows) {
      const CheckRow* prev = runs[k - 1].find(row.check);
      if (!prev || !std::isfinite(prev->measured) || !std::isfinite(row.measured)) continue;
      out.info("drift[" + std::to_string(levels[k - 1]) + "->" + std::to_string(levels[k]) + "]/" + row.check,
               rel_drift(prev->measured, row.measured));
    }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace taupsd::harness
