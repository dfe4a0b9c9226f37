#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "taupsd/errors.hpp"
#include "taupsd/harness/config.hpp"
#include "taupsd/harness/corpus.hpp"
#include "taupsd/harness/io.hpp"
#include "taupsd/harness/report.hpp"
#include "taupsd/harness/runner.hpp"

using namespace taupsd;
using namespace taupsd::harness;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string usage_message(const json& j) {
  try {
    parse_config(j);
  } catch (const UsageError& e) {
    return e.what();
  }
  return "";
}

json hs_config() {
  return json::parse(R"J({"experiment": "hs-identity", "grid": {"dim": 1, "N": 64, "L": 10},
                         "symbols": ["gauss(sigma=1)"], "tau": ["kn", "weyl", "adjoint"], "seed": 7})J");
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("taupsd_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(TAUPSD_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("config validation names the offending field") {
  json j = hs_config();
  CHECK(usage_message(j).empty());

  j["grid"]["N"] = 63;
  CHECK(usage_message(j) == "config.grid.N: must be a positive even integer");
  j = hs_config();
  j["colour"] = "blue";
  CHECK(usage_message(j) == "config.colour: unknown field");
  j = hs_config();
  j["experiment"] = "schatten";
  CHECK(usage_message(j).find("config.p_list") == 0);
  j["p_list"] = json::array();
  CHECK(usage_message(j).find("config.p_list") == 0);
  j["p_list"] = {0.5};
  CHECK(usage_message(j).find("config.p_list[0]") == 0);
  j = hs_config();
  j["tau"] = {"sideways"};
  CHECK(usage_message(j).find("config.tau[0]") == 0);
  j = hs_config();
  j["levels"] = {64, 32};
  CHECK(usage_message(j) == "config.levels[1]: levels must be increasing");
  j = hs_config();
  j["experiment"] = "nonsense";
  CHECK(usage_message(j).find("config.experiment") == 0);

  const ExperimentConfig c = parse_config(json::parse(R"J({"experiment": "kernel", "symbols": ["gauss"],
      "tau": ["weyl", 0.25, [[0.5, 1], [0, 0.5]]], "options": {"m": 1.5, "flag": true}})J"));
  CHECK(c.taus_for(1).size() == 2);
  CHECK(c.taus_for(2).size() == 3);
  CHECK(c.number("m", 0.0) == 1.5);
  CHECK(c.number("absent", 3.0) == 3.0);
  CHECK(c.flag("flag", false));
  CHECK_THROWS_AS(c.integer("m", 0), UsageError);
  CHECK(parse_experiment("tau-scan") == Experiment::TauScan);
  for (const auto& name : experiment_names()) CHECK(to_string(parse_experiment(name)) == name);
}

TEST_CASE("every shipped acceptance config parses") {
  int count = 0;
  for (const auto& entry : fs::directory_iterator(TAUPSD_ACCEPTANCE_CONFIG_DIR)) {
    if (entry.path().extension() != ".json") continue;
    CHECK_NOTHROW(load_config(entry.path()));
    ++count;
  }
  CHECK(count == 10);
  for (const auto& entry : fs::directory_iterator(fs::path(TAUPSD_ACCEPTANCE_CONFIG_DIR).parent_path() / "examples"))
    CHECK_NOTHROW(load_config(entry.path()));
}

TEST_CASE("corpus resolution") {
  CHECK(resolve_symbol("gauss(sigma=0.5)", Space::X, 1)(Point::Zero(1)) == cplx(1.0));
  CHECK_NOTHROW(resolve_symbol("gauss", Space::XStar, 2));
  CHECK(resolve_phase("gauss", Grid(1, 16, 4.0)).values.size() == 256);
  CHECK(resolve_symbol("bracket(m=-3)", Space::X, 1).degree() == -3.0);
  CHECK_THROWS_AS(resolve_symbol("no_such_family", Space::X, 1), LookupError);
  CHECK_THROWS_AS(resolve_symbol("gauss(colour=2)", Space::X, 1), LookupError);
  CHECK_THROWS_AS(parse_symbol_ref("gauss(sigma=)"), UsageError);
  const SymbolRef r = parse_symbol_ref("bracket(m=-2.5)");
  CHECK(r.family == "bracket");
  CHECK(r.get("m", 0.0) == -2.5);
  const json manifest = corpus_manifest();
  CHECK(manifest["instances"].size() == corpus_instances().size());
  CHECK(manifest["families"].size() == corpus().size());
  for (const std::string& name : admissible_kernel_symbols(1))
    CHECK(resolve_symbol(name, Space::X, 1).degree() < -1.0);
}

TEST_CASE("running experiments") {
  const RunReport r = run(parse_config(hs_config()));
  CHECK(r.passed());
  CHECK(r.provenance["seed"] == 7);
  CHECK(r.provenance["experiment"] == "hs-identity");
  const CheckRow* row = nullptr;
  for (const auto& x : r.rows)
    if (x.check.rfind("hs_identity[", 0) == 0) row = &x;
  REQUIRE(row != nullptr);
  CHECK(row->status == Status::Pass);

  json f = json::parse(R"J({"experiment": "factorize", "grid": {"dim": 1, "N": 32, "L": 8},
      "symbols": ["bracket(m=-3)"], "symbols_b": ["gauss"], "tau": ["weyl"]})J");
  const RunReport fr = run(parse_config(f));
  CHECK(fr.passed());
  const CheckRow* worst = fr.find("factorization_max_residual");
  REQUIRE(worst != nullptr);
  CHECK(worst->measured < 1e-8);

  // Bit-identical reruns.
  CHECK(rows_csv(run(parse_config(hs_config()))) == rows_csv(r));
}

TEST_CASE("convergence studies") {
  const ExperimentConfig c = parse_config(hs_config());
  const RunReport one = convergence_study(c, {32});
  for (const auto& row : one.rows) CHECK(row.check.find("drift[") == std::string::npos);
  const RunReport two = convergence_study(c, {32, 64});
  bool drift = false;
  for (const auto& row : two.rows) drift = drift || row.check.rfind("drift[32->64]", 0) == 0;
  CHECK(drift);
  CHECK_THROWS_AS(convergence_study(c, {64, 32}), UsageError);
  CHECK_THROWS_AS(convergence_study(c, {4096}, 1024), PreconditionError);
  CHECK(uses_dense_matrices(Experiment::HsIdentity));
  CHECK_FALSE(uses_dense_matrices(Experiment::Decompose));
}

TEST_CASE("report rows") {
  RunReport r;
  r.at_most("a", 1.0, 2.0);
  r.at_most("b", 3.0, 2.0, false);
  r.at_least("c", 1.0, 2.0);
  r.within_rel("d", 1.001, 1.0, 0.01);
  r.in_range("e", 5.0, 0.0, 1.0, false);
  r.info("f", 42.0);
  CHECK(r.find("a")->status == Status::Pass);
  CHECK(r.find("b")->status == Status::Warn);
  CHECK(r.find("c")->status == Status::Fail);
  CHECK(r.find("d")->status == Status::Pass);
  CHECK(r.find("e")->status == Status::Warn);
  CHECK(r.find("f")->status == Status::Info);
  CHECK(r.count(Status::Warn) == 2);
  CHECK_FALSE(r.passed());
  CHECK(std::stod(format_number(0.1)) == 0.1);
  CHECK(std::stod(format_number(1.0 / 3.0)) == 1.0 / 3.0);

  const fs::path dir = scratch("report");
  write_report(r, dir);
  CHECK(fs::exists(dir / "report.json"));
  std::ifstream csv(dir / "rows.csv");
  std::stringstream ss;
  ss << csv.rdbuf();
  CHECK(ss.str() == rows_csv(r));
  std::ifstream rj(dir / "report.json");
  const json back = json::parse(rj);
  CHECK(back["rows"].size() == 6);
}

TEST_CASE("binary dumps round trip") {
  const fs::path dir = scratch("io");
  const Grid g(2, 8, 3.0);
  GridFunction f(g, Side::Frequency);
  for (std::size_t k = 0; k < f.values.size(); ++k) f.values[k] = cplx(std::sin(k * 1.3), 1.0 / (k + 1.0));
  write_grid_function(dir / "f", f);
  const GridFunction f2 = read_grid_function(dir / "f");
  CHECK(f2.side == Side::Frequency);
  CHECK(f2.grid.points_per_axis() == 8);
  CHECK(f2.values == f.values);

  KernelMatrix k;
  k.grid = Grid(1, 6, 2.0);
  k.weight = k.grid.cell_volume();
  k.values = Eigen::MatrixXcd::Random(6, 6);
  write_kernel(dir / "k", k);
  const KernelMatrix k2 = read_kernel(dir / "k");
  CHECK(k2.values == k.values);
  CHECK(k2.weight == k.weight);

  SchattenReport s;
  s.singular_values = {1.0, 0.5, 1e-20};
  s.p_norms = {{2.0, 1.118}};
  const json sj = schatten_json(s);
  CHECK(sj["singular_values"].size() == 2);
}

TEST_CASE("command-line tool") {
  const fs::path out = scratch("cli");
  const fs::path cfg = out / "hs.json";
  std::ofstream(cfg) << hs_config().dump();
  CHECK(run_cli("hs-identity --config " + cfg.string() + " --out " + (out / "run").string() + " --quiet") == 0);
  CHECK(fs::exists(out / "run" / "report.json"));
  CHECK(run_cli("schatten --config " + cfg.string() + " --out " + (out / "x").string()) == 2);
  json bad = hs_config();
  bad["grid"]["N"] = 7;
  std::ofstream(out / "bad.json") << bad.dump();
  CHECK(run_cli("hs-identity --config " + (out / "bad.json").string()) == 2);
  CHECK(run_cli("corpus") == 0);
  CHECK(run_cli("no-such-command") != 0);
}

TEST_CASE("config schema matches the parser") {
  const fs::path root = fs::path(TAUPSD_ACCEPTANCE_CONFIG_DIR).parent_path().parent_path();
  std::ifstream in(root / "docs" / "config_schema.json");
  REQUIRE(in.good());
  const json schema = json::parse(in);
  std::vector<std::string> names = schema["properties"]["experiment"]["enum"];
  std::sort(names.begin(), names.end());
  std::vector<std::string> known = experiment_names();
  std::sort(known.begin(), known.end());
  CHECK(names == known);
  for (const auto& [key, _] : schema["properties"].items()) {
    json j = hs_config();
    if (!j.contains(key)) j[key] = json();
    CHECK(usage_message(j).find("unknown field") == std::string::npos);
  }
}
