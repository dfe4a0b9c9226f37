// One line per acceptance criterion. Usage: taupsd_acceptance [AC1 ... AC10]
// Exit status is nonzero when any selected criterion fails.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "taupsd/harness/runner.hpp"

namespace h = taupsd::harness;
namespace tol = taupsd::tol;

namespace {

enum class Agg { Max, Min };

// Every row whose name starts with `prefix` (and contains `needle`) must
// meet the limit, whatever status the harness gave the row.
struct Gate {
  std::string prefix;
  Agg agg;
  double limit;
  std::string needle;
};

struct Criterion {
  std::string id;
  std::string title;
  std::string config;
  double budget_seconds;
  std::vector<Gate> gates;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {"AC1", "Hilbert-Schmidt identity", "ac01_hs_identity.json", 30.0,
       {{"hs_identity[", Agg::Max, tol::kHsIdentityRel, ""},
        {"hs_identity[", Agg::Max, tol::kHsIdentityRel, "n=2"},
        {"hs_tau_spread", Agg::Max, tol::kHsTauSpread, ""},
        {"hs_refinement_increase", Agg::Max, 0.0, ""}}},
      {"AC2", "factorization exactness", "ac02_factorize.json", 60.0,
       {{"factorization[", Agg::Max, tol::kFactorizationResidual, "U1"},
        {"factorization[", Agg::Max, tol::kFactorizationResidual, "U0"}}},
      {"AC3", "extended Cordes lemma", "ac03_cordes.json", 120.0,
       {{"trace_norm_drift", Agg::Max, tol::kCordesDrift, ""},
        {"trace_continuity_slope", Agg::Min, tol::kContinuitySlope, ""}}},
      {"AC4", "partition of unity", "ac04_decompose.json", 60.0,
       {{"partition_completeness", Agg::Max, tol::kPartitionCompleteness, ""},
        {"reconstruction[", Agg::Max, tol::kReconstruction, ""}}},
      {"AC5", "decay estimates", "ac05_decay.json", 60.0,
       {{"decay_profile_drift", Agg::Max, tol::kDecayDrift, ""},
        {"l1_cauchy", Agg::Max, tol::kL1Cauchy, ""}}},
      {"AC6", "Bessel potentials", "ac06_bessel.json", 60.0,
       {{"bessel_closed_form_max", Agg::Max, tol::kBesselPointwise, ""},
        {"bessel_round_trip", Agg::Max, tol::kBesselRoundTrip, ""}}},
      {"AC7", "Calderon-Vaillancourt", "ac07_cv.json", 60.0,
       {{"cv_growth", Agg::Max, tol::kFamilyGrowth, ""}}},
      {"AC8", "Schatten consistency", "ac08_schatten.json", 60.0,
       {{"schatten_monotone", Agg::Max, tol::kSchattenOrder, ""},
        {"schatten_log_convex", Agg::Max, tol::kSchattenOrder, ""},
        {"rank_one_", Agg::Max, tol::kRankOneOracle, ""},
        {"fft_vs_direct_dft", Agg::Max, tol::kDftOraclePerPoint * 64, ""}}},
      {"AC9", "scaling lemma", "ac09_scaling.json", 60.0,
       {{"scaling_slope", Agg::Min, 0.5 - tol::kScalingSlopeMargin, "m=0.5"},
        {"scaling_slope", Agg::Min, 1.0 - tol::kScalingSlopeMargin, "m=1]"}}},
      {"AC10", "dual Sobolev norms", "ac10_sobolev.json", 60.0,
       {{"sobolev_ratio[", Agg::Min, tol::kSobolevRatioLow, ""},
        {"sobolev_ratio[", Agg::Max, tol::kSobolevRatioHigh, ""},
        {"sobolev_ratio_drift", Agg::Max, tol::kSobolevDrift, ""}}},
  };
  return all;
}

struct GateResult {
  bool ok = false;
  double worst = std::nan("");
  int rows = 0;
};

GateResult evaluate(const Gate& gate, const h::RunReport& report) {
  GateResult out;
  for (const auto& row : report.rows) {
    if (row.check.rfind(gate.prefix, 0) != 0) continue;
    if (!gate.needle.empty() && row.check.find(gate.needle) == std::string::npos) continue;
    if (row.status == h::Status::Info) continue;
    ++out.rows;
    if (out.rows == 1 || (gate.agg == Agg::Max ? row.measured > out.worst : row.measured < out.worst))
      out.worst = row.measured;
  }
  if (out.rows > 0)
    out.ok = gate.agg == Agg::Max ? out.worst <= gate.limit : out.worst >= gate.limit;
  return out;
}

bool run_criterion(const Criterion& c, const std::filesystem::path& config_dir) {
  h::ExperimentConfig cfg = h::load_config(config_dir / c.config);
  cfg.output.clear();
  const h::RunReport report = h::run(cfg);
  bool ok = report.count(h::Status::Fail) == 0;
  std::string detail;
  for (const auto& gate : c.gates) {
    const GateResult g = evaluate(gate, report);
    ok = ok && g.ok;
    detail += "  " + gate.prefix + (gate.needle.empty() ? "" : "*" + gate.needle) + " " +
              (gate.agg == Agg::Max ? "max=" : "min=") + h::format_number(g.worst) +
              (gate.agg == Agg::Max ? " <= " : " >= ") + h::format_number(gate.limit) + " (" +
              std::to_string(g.rows) + " rows)";
  }
  const bool in_budget = report.seconds < c.budget_seconds;
  ok = ok && in_budget;
  std::ostringstream time;
  time << std::fixed << std::setprecision(2) << report.seconds << "s < " << c.budget_seconds << "s";
  std::cout << (ok ? "PASS " : "FAIL ") << std::left << std::setw(5) << c.id << c.title << "  [" << time.str()
            << "]" << detail << "\n";
  if (!ok)
    for (const auto& row : report.rows)
      if (row.status == h::Status::Fail || row.status == h::Status::Warn)
        std::cout << "       " << h::to_string(row.status) << " " << row.check << " measured="
                  << h::format_number(row.measured) << " target " << row.target << "\n";
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  const std::filesystem::path config_dir = TAUPSD_ACCEPTANCE_CONFIG_DIR;
  std::vector<std::string> selected(argv + 1, argv + argc);
  int failures = 0, ran = 0;
  for (const auto& c : criteria()) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end()) continue;
    ++ran;
    try {
      if (!run_criterion(c, config_dir)) ++failures;
    } catch (const std::exception& e) {
      std::cout << "FAIL " << c.id << " " << c.title << "  error: " << e.what() << "\n";
      ++failures;
    }
  }
  if (ran == 0) {
    std::cerr << "no criterion matches the arguments\n";
    return 2;
  }
  std::cout << (ran - failures) << "/" << ran << " criteria passed\n";
  return failures == 0 ? 0 : 1;
}
