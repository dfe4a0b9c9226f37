// taupsd <experiment> --config <file.json> [--out <dir>] [--levels 32,64,128]
// taupsd corpus

#include <iostream>

#include "CLI11.hpp"
#include "taupsd/errors.hpp"
#include "taupsd/harness/corpus.hpp"
#include "taupsd/harness/runner.hpp"

namespace h = taupsd::harness;

namespace {

void print_summary(const h::RunReport& r, std::ostream& os) {
  for (const auto& row : r.rows)
    os << h::to_string(row.status) << "  " << row.check << "  " << h::format_number(row.measured) << "  "
       << row.target << "\n";
  os << "pass=" << r.count(h::Status::Pass) << " warn=" << r.count(h::Status::Warn)
     << " fail=" << r.count(h::Status::Fail) << " info=" << r.count(h::Status::Info) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical laboratory for tau-quantized pseudo-differential operators"};
  app.require_subcommand(1);

  std::string config_path, out_dir;
  std::vector<int> levels;
  bool quiet = false;
  for (const auto& name : h::experiment_names()) {
    auto* sub = app.add_subcommand(name, "Run the " + name + " experiment");
    sub->add_option("--config", config_path, "Experiment config (JSON)")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir, "Output directory (overrides config.output)");
    sub->add_option("--levels", levels, "Refinement levels for a convergence study")->delimiter(',');
    sub->add_flag("--quiet", quiet, "Only print the summary line");
  }
  auto* corpus = app.add_subcommand("corpus", "Print the shipped symbol corpus as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (corpus->parsed()) {
      std::cout << h::corpus_manifest().dump(2) << "\n";
      return 0;
    }
    const std::string name = app.get_subcommands().front()->get_name();
    h::ExperimentConfig cfg = h::load_config(config_path);
    if (h::parse_experiment(name) != cfg.experiment)
      throw taupsd::UsageError("config.experiment: '" + std::string(h::to_string(cfg.experiment)) +
                               "' does not match the subcommand '" + name + "'");
    if (!out_dir.empty()) cfg.output = out_dir;
    if (cfg.output.empty()) cfg.output = "out/" + name;
    const h::RunReport report = levels.empty() ? h::run(cfg) : h::convergence_study(cfg, levels);
    h::write_report(report, cfg.output);
    if (quiet) {
      std::cout << "pass=" << report.count(h::Status::Pass) << " warn=" << report.count(h::Status::Warn)
                << " fail=" << report.count(h::Status::Fail) << "\n";
    } else {
      print_summary(report, std::cout);
    }
    std::cout << "report: " << cfg.output << "/report.json\n";
    return report.passed() ? 0 : 1;
  } catch (const taupsd::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const taupsd::PreconditionError& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
