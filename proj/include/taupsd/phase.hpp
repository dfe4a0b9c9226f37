#pragma once

#include <functional>
#include <vector>

#include "taupsd/euclid.hpp"
#include "taupsd/kernel.hpp"

namespace taupsd {

/// Samples of a function on phase space X x X*: the space nodes of
/// grid_x times its frequency nodes. Flat index x_flat * N^n + p_flat.
struct PhaseSymbol {
  Grid grid_x;
  std::vector<cplx> values;
  /// Dimensions of an orthogonal splitting X = X_1 + ... + X_k (consecutive
  /// axes); empty means a single group.
  std::vector<int> decomposition;

  /// The frequency grid viewed as its own space grid.
  Grid grid_p() const { return grid_x.dual(); }
  /// Tensor shape [N]*2n (x axes first).
  std::vector<int> shape() const;
  /// h^n dp^n.
  double cell_volume() const;
  /// Group sizes, defaulting to {n}.
  std::vector<int> groups() const;
};

using PhaseFn = std::function<cplx(const Point& x, const Point& p)>;

PhaseSymbol sample_phase(const Grid& g, const PhaseFn& f, std::vector<int> decomposition = {});

/// L^p norm over phase space with weight h^n dp^n; p = infinity gives the max.
double lp_norm(const PhaseSymbol& a, double p);

/// g = F^{-1}a (x) Fb, with both transforms taken discretely on g.
PhaseSymbol product_phase_symbol(const Symbol& a, const Symbol& b, const Grid& g);

/// Kernel of the tau-quantization: K = ((id x F^{-1}) a) o C_tau, with the
/// x-slot evaluated off the grid by trigonometric interpolation and x - y
/// restricted to the window [-L, L)^n.
KernelMatrix quantize(const PhaseSymbol& a, const Endo& tau);

/// Fourier multiplier on phase space: `mult(xi, eta)` in the variables dual
/// to x and p.
PhaseSymbol apply_phase_multiplier(const PhaseSymbol& a,
                                   const std::function<double(const Point&, const Point&)>& mult);

/// Spectral derivative d_x^alpha d_p^beta.
PhaseSymbol phase_derivative(const PhaseSymbol& a, const MultiIndex& alpha, const MultiIndex& beta);

}  // namespace taupsd
