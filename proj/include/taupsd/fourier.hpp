#pragma once

#include <functional>
#include <span>
#include <vector>

#include "taupsd/grid.hpp"

namespace taupsd {

// Fourier convention used everywhere in the library:
//   (F f)(p)      = int e^{-i<x,p>} f(x) dx
//   (F^{-1} g)(x) = (2 pi)^{-n} int e^{i<x,p>} g(p) dp
// Both integrals are discretized by the trapezoidal rule on a Grid (weights
// h^n and dp^n), which makes the discrete pair an exact inverse pair.

enum class Side { Space, Frequency };

const char* to_string(Side s);

struct GridFunction {
  Grid grid;
  std::vector<cplx> values;
  Side side = Side::Space;

  GridFunction() = default;
  GridFunction(Grid g, Side s) : grid(g), values(g.size()), side(s) {}
  GridFunction(Grid g, std::vector<cplx> v, Side s);

  /// Node coordinates for index `flat` on this function's side.
  Point node(std::size_t flat) const {
    return side == Side::Space ? grid.point(flat) : grid.freq_point(flat);
  }
  /// Quadrature weight per node on this function's side.
  double weight() const {
    return side == Side::Space ? grid.cell_volume() : grid.freq_cell_volume();
  }
};

GridFunction sample(const Grid& g, Side side, const std::function<cplx(const Point&)>& f);

GridFunction forward_fft(const GridFunction& f);
GridFunction inverse_fft(const GridFunction& g);

/// Weighted L^2 norm (sum |f|^2 w)^{1/2} on the function's side.
double l2_norm(const GridFunction& f);
/// Weighted L^p norm; p = infinity gives the max.
double lp_norm(const GridFunction& f, double p);

/// Applies the Fourier multiplier m(p) to a space-side function.
GridFunction apply_multiplier(const GridFunction& f, const std::function<cplx(const Point&)>& m);

/// Spectral derivative d^alpha via the multiplier (i p)^alpha.
GridFunction spectral_derivative(const GridFunction& f, const MultiIndex& alpha);

/// Evaluates the trigonometric polynomial (dp/2pi)^n sum_j g_j e^{i<x,p_j>}
/// at an arbitrary point x, i.e. the discrete inverse transform of the
/// frequency-side samples g extended off the grid. Exact on grid nodes.
cplx evaluate_inverse_at(const GridFunction& spectrum, const Point& x);

// ---------------------------------------------------------------------------
// Low-level tensor transforms used by the phase-space code.

/// One transformed axis of a dense row-major tensor. `spacing` is the
/// node spacing on the input side (h for forward, dp for inverse).
struct AxisTransform {
  int axis;
  double half_width;  // half width of the space-side window of this axis
};

enum class Direction { Forward, Inverse };

/// In-place physical transform along the listed axes of a tensor with the
/// given shape (every transformed axis must have even length).
void transform_axes(std::span<cplx> data, std::span<const int> shape,
                    std::span<const AxisTransform> axes, Direction dir);

/// Phase factors e^{i x p_j}, j = 0..N-1, for the frequency nodes of an
/// axis with N points and half width L (spacing pi/L).
void phase_vector(double x, int n, double half_width, std::span<cplx> out);

/// Contracts an n-dimensional coefficient tensor (N per axis) with the
/// per-axis phase vectors. `scratch` must hold at least N^(n-1) entries.
cplx contract_phases(std::span<const cplx> coeffs, int dim, int n,
                     std::span<const cplx> phases, std::span<cplx> scratch);

}  // namespace taupsd
