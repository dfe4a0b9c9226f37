#include "taupsd/partition.hpp"

#include <algorithm>
#include <cmath>

#include "taupsd/errors.hpp"
#include "taupsd/euclid.hpp"
#include "taupsd/quadrature.hpp"

namespace taupsd {

namespace {

constexpr int kPhiNodes = 128;
constexpr int kPanelOrder = 16;

double eta(double s, double beta) {
  const double z = (s - 1.5) / 0.5;
  if (std::abs(z) >= 1.0) return 0.0;
  return std::exp(beta * (1.0 - 1.0 / (1.0 - z * z)));
}

double integrate_eta(double a, double b, double beta) {
  static const QuadratureRule ref = gauss_legendre(kPhiNodes, -1.0, 1.0);
  const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
  double s = 0.0;
  for (int k = 0; k < kPhiNodes; ++k) s += ref.weights[k] * eta(mid + half * ref.nodes[k], beta);
  return half * s;
}

}  // namespace

double PartitionPair::phi_radial(double r) const {
  if (r <= 1.0) return 1.0;
  if (r >= 2.0) return 0.0;
  return std::min(1.0, integrate_eta(r, 2.0, shape_param) / normalization);
}

double PartitionPair::phi_radial_derivative(double r) const {
  return -eta(r, shape_param) / normalization;
}

double PartitionPair::psi_radial(double r) const { return r * eta(r, shape_param) / normalization; }

PartitionPair build_partition(double shape_param) {
  if (!(shape_param > 0.0) || !std::isfinite(shape_param))
    throw DomainError("build_partition: shape_param must be positive");
  PartitionPair pp;
  pp.shape_param = shape_param;
  pp.normalization = integrate_eta(1.0, 2.0, shape_param);
  const double beta = shape_param, z = pp.normalization;
  pp.phi = Symbol("phi", kSchwartzDegree, 1,
                  [beta, z](const MultiIndex& alpha, const Point& p) -> cplx {
                    const double r = p.norm();
                    const int k = order(alpha);
                    if (k == 0) {
                      if (r <= 1.0) return 1.0;
                      if (r >= 2.0) return 0.0;
                      return integrate_eta(r, 2.0, beta) / z;
                    }
                    // d_i phi = Phi'(r) p_i / r
                    const int axis = static_cast<int>(
                        std::find(alpha.begin(), alpha.end(), 1) - alpha.begin());
                    if (r <= 1.0 || r >= 2.0) return 0.0;
                    return -eta(r, beta) / z * p[axis] / r;
                  },
                  true);
  pp.psi = Symbol("psi", kSchwartzDegree, 0,
                  [beta, z](const MultiIndex&, const Point& p) -> cplx {
                    const double r = p.norm();
                    return r * eta(r, beta) / z;
                  },
                  true);
  return pp;
}

QuadratureRule log_t_rule(double T, int quad_nodes) {
  if (!(T >= 2.0)) throw DomainError("dyadic quadrature: T must be >= 2");
  if (quad_nodes < kPanelOrder) throw DomainError("dyadic quadrature: need >= 16 nodes");
  const int panels = (quad_nodes + kPanelOrder - 1) / kPanelOrder;
  // int_1^T f(t) dt/t = int_0^{log T} f(e^s) ds
  QuadratureRule rule = composite_gauss_legendre(panels, kPanelOrder, 0.0, std::log(T));
  for (double& s : rule.nodes) s = std::exp(s);
  return rule;
}

Reconstruction dyadic_reconstruct(const Symbol& a, double m, const PartitionPair& pp, double T,
                                  int quad_nodes, const Grid& g) {
  const QuadratureRule rule = log_t_rule(T, quad_nodes);
  Reconstruction out;
  out.values = GridFunction(g, Side::Frequency);
  double pmax = 0.0;
#pragma omp parallel for reduction(max : pmax)
  for (std::size_t k = 0; k < g.size(); ++k) {
    const Point p = g.freq_point(k);
    const double r = p.norm();
    pmax = std::max(pmax, r);
    cplx acc = pp.phi_radial(r) * a(p);
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      const double t = rule.nodes[q];
      const double psi = pp.psi_radial(r / t);
      if (psi == 0.0) continue;
      // t^m (psi a_t)(p/t) with a_t(p/t) = t^{-m} a(p)
      const cplx a_t = std::pow(t, -m) * a(p);
      acc += rule.weights[q] * std::pow(t, m) * psi * a_t;
    }
    out.values.values[k] = acc;
  }
  if (T / 2.0 < pmax) {
    out.covered = false;
    out.warning = "T/2 = " + std::to_string(T / 2.0) +
                  " does not cover the largest grid frequency " + std::to_string(pmax);
  }
  return out;
}

double partition_completeness(const PartitionPair& pp, double T, int quad_nodes, const Grid& g) {
  const QuadratureRule rule = log_t_rule(T, quad_nodes);
  double worst = 0.0;
#pragma omp parallel for reduction(max : worst)
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double r = g.freq_point(k).norm();
    if (r > T / 2.0) continue;
    double s = pp.phi_radial(r);
    for (std::size_t q = 0; q < rule.nodes.size(); ++q)
      s += rule.weights[q] * pp.psi_radial(r / rule.nodes[q]);
    worst = std::max(worst, std::abs(s - 1.0));
  }
  return worst;
}

BandDecay band_term_decay(const Symbol& a, double m, const PartitionPair& pp, double t, int M,
                          int N, const Grid& g) {
  const int n = g.dim();
  if (!(t >= 1.0)) throw PreconditionError("band_term_decay: t must be >= 1");
  if (M < 1.0 + std::max(0.0, m + n))
    throw PreconditionError("band_term_decay: M must be >= 1 + max(0, m + n)");
  if (2.0 * t > g.max_frequency())
    throw PreconditionError("band_term_decay: band 2t exceeds the grid frequency range");
  // (psi a_t)_{1/t}(p) = psi(p/t) t^{-m} a(p)
  const GridFunction band = sample(g, Side::Frequency, [&](const Point& p) -> cplx {
    const double psi = pp.psi_radial(p.norm() / t);
    return psi == 0.0 ? cplx(0.0) : psi * std::pow(t, -m) * a(p);
  });
  const GridFunction f = inverse_fft(band);
  BandDecay out;
  out.t = t;
  out.ratio = GridFunction(g, Side::Space);
  const double scale = std::pow(t, m + n);
  std::size_t best = 0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    const Point x = g.point(k);
    const double bound = scale * std::pow(bracket(x), -N) * std::pow(bracket(Point(t * x)), -M);
    const double r = std::abs(f.values[k]) / bound;
    out.ratio.values[k] = r;
    if (r > out.constant) {
      out.constant = r;
      best = k;
    }
  }
  out.argmax = g.point(best);
  return out;
}

}  // namespace taupsd
