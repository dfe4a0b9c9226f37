#include "taupsd/harness/config.hpp"

#include <cmath>
#include <fstream>

#include "taupsd/errors.hpp"

namespace taupsd::harness {

namespace {

struct NamedExperiment {
  Experiment e;
  const char* name;
};

constexpr NamedExperiment kExperiments[] = {
    {Experiment::Decompose, "decompose"}, {Experiment::Decay, "decay"},
    {Experiment::Bessel, "bessel"},       {Experiment::Kernel, "kernel"},
    {Experiment::Factorize, "factorize"}, {Experiment::TauScan, "tau-scan"},
    {Experiment::Quantize, "quantize"},   {Experiment::Schatten, "schatten"},
    {Experiment::Cordes, "cordes"},       {Experiment::Tcp2, "tcp2"},
    {Experiment::Cv, "cv"},               {Experiment::Sobolev, "sobolev"},
    {Experiment::HsIdentity, "hs-identity"}, {Experiment::Scaling, "scaling"},
};

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
  throw UsageError(path + ": " + msg);
}

double as_number(const nlohmann::json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(path, "must be finite");
  return v;
}

int as_integer(const nlohmann::json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<int>();
}

std::string as_string(const nlohmann::json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

GridSpec parse_grid(const nlohmann::json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object with dim, N, L");
  for (const auto& [k, v] : j.items())
    if (k != "dim" && k != "N" && k != "L") fail(path + "." + k, "unknown field");
  GridSpec g;
  if (j.contains("dim")) g.dim = as_integer(j["dim"], path + ".dim");
  if (j.contains("N")) g.points_per_axis = as_integer(j["N"], path + ".N");
  if (j.contains("L")) g.half_width = as_number(j["L"], path + ".L");
  if (g.dim < 1) fail(path + ".dim", "must be a positive integer");
  if (g.points_per_axis < 2 || g.points_per_axis % 2 != 0)
    fail(path + ".N", "must be a positive even integer");
  if (!(g.half_width > 0.0)) fail(path + ".L", "must be positive");
  return g;
}

TauSpec parse_tau(const nlohmann::json& j, const std::string& path) {
  TauSpec t;
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    t.label = s;
    if (s == "kn") t.scalar = 0.0;
    else if (s == "weyl") t.scalar = 0.5;
    else if (s == "adjoint") t.scalar = 1.0;
    else fail(path, "unknown tau preset '" + s + "' (kn, weyl, adjoint)");
    return t;
  }
  if (j.is_number()) {
    t.scalar = as_number(j, path);
    t.label = nlohmann::json(t.scalar).dump();
    return t;
  }
  if (j.is_array()) {
    const auto rows = j.size();
    if (rows == 0) fail(path, "matrix must be non-empty");
    t.is_scalar = false;
    t.matrix.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(rows));
    for (std::size_t r = 0; r < rows; ++r) {
      const std::string rp = path + "[" + std::to_string(r) + "]";
      if (!j[r].is_array() || j[r].size() != rows) fail(rp, "matrix must be square");
      for (std::size_t c = 0; c < rows; ++c)
        t.matrix(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
            as_number(j[r][c], rp + "[" + std::to_string(c) + "]");
    }
    t.label = j.dump();
    return t;
  }
  fail(path, "expected a preset name, a number, or a square matrix");
}

template <class T, class F>
std::vector<T> parse_list(const nlohmann::json& j, const std::string& path, F&& each) {
  if (!j.is_array()) fail(path, "expected a list");
  std::vector<T> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(each(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

}  // namespace

const char* to_string(Experiment e) {
  for (const auto& ne : kExperiments)
    if (ne.e == e) return ne.name;
  return "?";
}

Experiment parse_experiment(const std::string& name) {
  for (const auto& ne : kExperiments)
    if (name == ne.name) return ne.e;
  throw UsageError("experiment: unknown experiment '" + name + "'");
}

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& ne : kExperiments) v.push_back(ne.name);
    return v;
  }();
  return names;
}

std::optional<Endo> TauSpec::expand(int n) const {
  if (is_scalar) return scalar_endo(n, scalar);
  if (matrix.rows() != n) return std::nullopt;
  return classify_endo(matrix);
}

std::vector<std::pair<std::string, Endo>> ExperimentConfig::taus_for(int n) const {
  std::vector<std::pair<std::string, Endo>> out;
  for (const auto& t : taus)
    if (auto e = t.expand(n)) out.emplace_back(t.label, *e);
  return out;
}

double ExperimentConfig::number(const std::string& key, double fallback) const {
  if (!options.contains(key)) return fallback;
  return as_number(options[key], "config.options." + key);
}

int ExperimentConfig::integer(const std::string& key, int fallback) const {
  if (!options.contains(key)) return fallback;
  return as_integer(options[key], "config.options." + key);
}

bool ExperimentConfig::flag(const std::string& key, bool fallback) const {
  if (!options.contains(key)) return fallback;
  if (!options[key].is_boolean()) fail("config.options." + key, "expected true or false");
  return options[key].get<bool>();
}

std::vector<double> ExperimentConfig::numbers(const std::string& key, std::vector<double> fallback) const {
  if (!options.contains(key)) return fallback;
  return parse_list<double>(options[key], "config.options." + key, as_number);
}

std::vector<int> ExperimentConfig::integers(const std::string& key, std::vector<int> fallback) const {
  if (!options.contains(key)) return fallback;
  return parse_list<int>(options[key], "config.options." + key, as_integer);
}

ExperimentConfig parse_config(const nlohmann::json& j) {
  if (!j.is_object()) fail("config", "expected a JSON object");
  static const std::vector<std::string> known = {"experiment", "grid",  "extra_grids", "symbols",
                                                 "symbols_b",  "tau",   "p_list",      "levels",
                                                 "options",    "output", "seed",       "description"};
  for (const auto& [k, v] : j.items())
    if (std::find(known.begin(), known.end(), k) == known.end()) fail("config." + k, "unknown field");
  ExperimentConfig c;
  c.raw = j;
  if (!j.contains("experiment")) fail("config.experiment", "required");
  try {
    c.experiment = parse_experiment(as_string(j["experiment"], "config.experiment"));
  } catch (const UsageError&) {
    fail("config.experiment", "unknown experiment '" + j["experiment"].dump() + "'");
  }
  if (j.contains("grid")) c.grid = parse_grid(j["grid"], "config.grid");
  if (j.contains("extra_grids"))
    c.extra_grids = parse_list<GridSpec>(j["extra_grids"], "config.extra_grids", parse_grid);
  if (j.contains("symbols"))
    c.symbols = parse_list<std::string>(j["symbols"], "config.symbols", as_string);
  if (j.contains("symbols_b"))
    c.symbols_b = parse_list<std::string>(j["symbols_b"], "config.symbols_b", as_string);
  if (j.contains("tau")) c.taus = parse_list<TauSpec>(j["tau"], "config.tau", parse_tau);
  if (j.contains("p_list")) {
    c.p_list = parse_list<double>(j["p_list"], "config.p_list", [](const nlohmann::json& v, const std::string& p) {
      if (v.is_string() && v.get<std::string>() == "inf") return std::numeric_limits<double>::infinity();
      const double x = as_number(v, p);
      if (x < 1.0) fail(p, "p must be >= 1");
      return x;
    });
  }
  if (j.contains("levels")) {
    c.levels = parse_list<int>(j["levels"], "config.levels", as_integer);
    for (std::size_t i = 0; i < c.levels.size(); ++i) {
      const std::string p = "config.levels[" + std::to_string(i) + "]";
      if (c.levels[i] < 2 || c.levels[i] % 2) fail(p, "must be a positive even integer");
      if (i > 0 && c.levels[i] <= c.levels[i - 1]) fail(p, "levels must be increasing");
    }
  }
  if (j.contains("options")) {
    if (!j["options"].is_object()) fail("config.options", "expected an object");
    c.options = j["options"];
  }
  if (j.contains("output")) c.output = as_string(j["output"], "config.output");
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) fail("config.seed", "expected a non-negative integer");
    c.seed = j["seed"].get<std::uint64_t>();
  }

  // Experiment-specific requirements.
  using E = Experiment;
  const E e = c.experiment;
  const bool needs_symbols = e != E::Bessel && e != E::Decompose;
  if (needs_symbols && c.symbols.empty() && !(e == E::Factorize && c.options.value("corpus_pairs", false)))
    fail("config.symbols", "at least one symbol is required for '" + std::string(to_string(e)) + "'");
  if ((e == E::Schatten || e == E::Tcp2) && c.p_list.empty())
    fail("config.p_list", "must list at least one p for '" + std::string(to_string(e)) + "'");
  const bool needs_tau = e == E::HsIdentity || e == E::Factorize || e == E::Kernel ||
                         e == E::Quantize || e == E::Schatten || e == E::Cordes || e == E::Tcp2 ||
                         e == E::Cv || e == E::TauScan;
  if (needs_tau && c.taus.empty()) fail("config.tau", "at least one tau is required");
  if (!c.taus.empty()) {
    bool any = !c.taus_for(c.grid.dim).empty();
    for (const auto& g : c.extra_grids) any = any || !c.taus_for(g.dim).empty();
    if (!any) fail("config.tau", "no tau matches the grid dimension");
  }
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("config: cannot open '" + path.string() + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError("config: '" + path.string() + "' is not valid JSON (" + e.what() + ")");
  }
  return parse_config(j);
}

}  // namespace taupsd::harness
