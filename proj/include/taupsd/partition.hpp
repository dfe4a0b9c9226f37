#pragma once

#include <string>
#include <vector>

#include "taupsd/fourier.hpp"
#include "taupsd/quadrature.hpp"
#include "taupsd/symbol.hpp"

namespace taupsd {

/// Radial pair (phi, psi) on X*: phi = 1 on |p| <= 1, 0 on |p| >= 2, and
/// psi(p) = -<grad phi(p), p>, supported in the annulus 1 <= |p| <= 2.
///
/// phi(p) = Phi(|p|) with Phi(r) = (1/Z) int_r^2 eta, where eta is a
/// mollifier bump on [1, 2] with sharpness `shape_param`.
struct PartitionPair {
  double shape_param = 4.0;
  double normalization = 1.0;  // Z
  Symbol phi;
  Symbol psi;

  double phi_radial(double r) const;
  /// Phi'(r).
  double phi_radial_derivative(double r) const;
  double psi_radial(double r) const;
};

PartitionPair build_partition(double shape_param = 4.0);

/// Nodes in t over [1, T]: Gauss-Legendre panels of 16 nodes in log t,
/// ceil(quad_nodes / 16) panels. Weights include the dt/t measure.
QuadratureRule log_t_rule(double T, int quad_nodes);

struct Reconstruction {
  GridFunction values;  // frequency side
  bool covered = true;  // T/2 reaches the largest grid frequency
  std::string warning;
};

/// phi a + int_1^T t^m (psi a_t)(./t) dt/t on the frequency nodes of g,
/// with a_t(p) = t^{-m} a(t p).
Reconstruction dyadic_reconstruct(const Symbol& a, double m, const PartitionPair& pp, double T,
                                  int quad_nodes, const Grid& g);

/// max |phi(p) + int_1^T psi(p/t) dt/t - 1| over the frequency nodes of g
/// with |p| <= T/2.
double partition_completeness(const PartitionPair& pp, double T, int quad_nodes, const Grid& g);

struct BandDecay {
  double t = 1.0;
  double constant = 0.0;  // smallest C with |F^{-1} band| <= C t^{m+n} <x>^{-N} <tx>^{-M}
  Point argmax;
  GridFunction ratio;     // pointwise |F^{-1} band| / (t^{m+n} <x>^{-N} <tx>^{-M})
};

/// Decay of the band piece F^{-1}((psi a_t)_{1/t}) on the space nodes of g.
/// Requires t >= 1, M >= 1 + max(0, m + n), and 2t <= pi/h.
BandDecay band_term_decay(const Symbol& a, double m, const PartitionPair& pp, double t, int M,
                          int N, const Grid& g);

}  // namespace taupsd
