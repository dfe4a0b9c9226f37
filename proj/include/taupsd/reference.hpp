#pragma once

#include <vector>

#include "taupsd/kernel.hpp"
#include "taupsd/phase.hpp"

// Straightforward serial implementations kept as test oracles and as the
// baseline for the benchmarks. No FFTs, no OpenMP, no phase recurrences.
namespace taupsd::reference {

/// Direct O(N^{2n}) summation of the forward / inverse transform.
GridFunction direct_forward(const GridFunction& f);
GridFunction direct_inverse(const GridFunction& g);

/// F^{-1}a(v) by direct summation with std::exp per term.
cplx inverse_at(const GridFunction& spectrum, const Point& v);

KernelMatrix kernel_ab(const Symbol& a, const Symbol& b, const Endo& tau, const Grid& g);

KernelMatrix quantize(const PhaseSymbol& a, const Endo& tau);

/// Singular values by one-sided Jacobi SVD, sorted non-increasing.
std::vector<double> singular_values(const KernelMatrix& k);

}  // namespace taupsd::reference
