#pragma once

#include <cstdint>
#include <optional>
#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "json.hpp"
#include "taupsd/euclid.hpp"
#include "taupsd/grid.hpp"

namespace taupsd::harness {

enum class Experiment {
  Decompose,
  Decay,
  Bessel,
  Kernel,
  Factorize,
  TauScan,
  Quantize,
  Schatten,
  Cordes,
  Tcp2,
  Cv,
  Sobolev,
  HsIdentity,
  Scaling,
};

const char* to_string(Experiment e);
/// Throws UsageError for unknown names.
Experiment parse_experiment(const std::string& name);
const std::vector<std::string>& experiment_names();

struct GridSpec {
  int dim = 1;
  int points_per_axis = 64;
  double half_width = 10.0;
  Grid grid() const { return Grid(dim, points_per_axis, half_width); }
};

/// A tau entry: a preset ("kn" = 0, "weyl" = 1/2, "adjoint" = 1) or scalar
/// c, both meaning c * identity in any dimension, or an explicit matrix.
struct TauSpec {
  std::string label;
  double scalar = 0.0;
  bool is_scalar = true;
  Eigen::MatrixXd matrix;

  /// Expansion in dimension n; nullopt when an explicit matrix has another size.
  std::optional<Endo> expand(int n) const;
};

struct ExperimentConfig {
  Experiment experiment = Experiment::HsIdentity;
  GridSpec grid;
  std::vector<GridSpec> extra_grids;
  std::vector<std::string> symbols;
  std::vector<std::string> symbols_b;
  std::vector<TauSpec> taus;
  std::vector<double> p_list;
  std::vector<int> levels;
  nlohmann::json options = nlohmann::json::object();
  std::string output;
  std::uint64_t seed = 0;
  nlohmann::json raw;

  /// Expanded taus of dimension n, with their labels.
  std::vector<std::pair<std::string, Endo>> taus_for(int n) const;

  // Typed access to `options` with field-path errors.
  double number(const std::string& key, double fallback) const;
  int integer(const std::string& key, int fallback) const;
  bool flag(const std::string& key, bool fallback) const;
  std::vector<double> numbers(const std::string& key, std::vector<double> fallback) const;
  std::vector<int> integers(const std::string& key, std::vector<int> fallback) const;
};

/// Validates and converts a JSON document. Throws UsageError naming the
/// offending field, e.g. "config.grid.N: must be a positive even integer".
ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::filesystem::path& path);

}  // namespace taupsd::harness
