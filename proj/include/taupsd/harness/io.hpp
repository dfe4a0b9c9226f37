#pragma once

#include <filesystem>

#include "json.hpp"
#include "taupsd/kernel.hpp"
#include "taupsd/schatten.hpp"

namespace taupsd::harness {

// Binary dumps: `<stem>.bin` holds little-endian complex doubles (real,
// imaginary interleaved), `<stem>.json` the header.

void write_grid_function(const std::filesystem::path& stem, const GridFunction& f);
GridFunction read_grid_function(const std::filesystem::path& stem);

/// Row-major (x index slowest) kernel values.
void write_kernel(const std::filesystem::path& stem, const KernelMatrix& k);
KernelMatrix read_kernel(const std::filesystem::path& stem);

nlohmann::json grid_json(const Grid& g);
nlohmann::json endo_json(const Endo& tau);

/// Singular values truncated at 1e-14 s_1, the p-norm map, grid and tau.
nlohmann::json schatten_json(const SchattenReport& r);

}  // namespace taupsd::harness
