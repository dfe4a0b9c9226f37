#pragma once

#include <vector>

#include "taupsd/fourier.hpp"
#include "taupsd/symbol.hpp"

namespace taupsd {

struct DecayRow {
  double radius;     // |x|
  double measured;   // |F^{-1}a(x)|
  double bound;      // <x>^{-N} (1 + |x|^{-m-n})
  double profile;    // measured / bound
};

struct DecayProfile {
  std::vector<DecayRow> rows;  // space nodes with |x| >= exclusion radius
  double max_profile = 0.0;
  double exclusion_radius = 0.0;
};

/// <x>^N |F^{-1}a(x)| / (1 + |x|^{-m-n}) over the space nodes of g with
/// |x| >= exclusion_radius (one cell when <= 0). Requires m + n > 0.
DecayProfile decay_profile(const Symbol& a, double m, int N, const Grid& g,
                           double exclusion_radius = 0.0);

/// sum |F^{-1}a| h^n. Requires m < 0.
double l1_check(const Symbol& a, double m, const Grid& g);

/// ||b F^{-1}a||_{L^2}. Requires m < -n/2.
double weighted_l2_check(const Symbol& a, const Symbol& b, double m, const Grid& g);

}  // namespace taupsd
