#pragma once

#include <vector>

#include "taupsd/harness/config.hpp"
#include "taupsd/harness/report.hpp"
#include "taupsd/harness/tolerances.hpp"

namespace taupsd::harness {

/// Runs one experiment. Contract violations become fail rows; numerical
/// failures inside the library become a fail row carrying the message.
RunReport run(const ExperimentConfig& config);

/// Whether the experiment builds dense N^n x N^n matrices.
bool uses_dense_matrices(Experiment e);

/// Reruns the experiment once per level (grid.N replaced) and appends
/// drift rows between consecutive levels. Refuses levels whose matrix
/// dimension N^n exceeds `cap` for dense experiments.
RunReport convergence_study(const ExperimentConfig& config, const std::vector<int>& levels,
                            int cap = tol::kMatrixDimensionCap);

}  // namespace taupsd::harness
