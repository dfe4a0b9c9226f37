#pragma once

#include "taupsd/fourier.hpp"

namespace taupsd {

/// F^{-1} of (1 + |p|^2)^{-r/2} on the space nodes of g.
GridFunction bessel_kernel(double r, const Grid& g);

/// ||(1 + |p|^2)^{m/2} F f||_{L^2} (2 pi)^{-n/2}.
double sobolev_norm_fourier(const GridFunction& f, double m);

/// Fourier-free H^m norm: sum_{|alpha| <= [m]} ||d^alpha f||^2 plus, for
/// non-integer m, the difference quotient
///   sum_{|alpha| = [m]} int int_{|z| <= r} |d^alpha f(x+z) - d^alpha f(x)|^2
///                       |z|^{-n-2mu} dx dz,   mu = m - [m],
/// over lattice offsets z != 0 with f extended by zero outside the window.
double sobolev_norm_slobodeckij(const GridFunction& f, double m, double r);

}  // namespace taupsd
