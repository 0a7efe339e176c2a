#pragma once

// Pairwise coupling strengths g_kl of the diagonal Ising-type interaction
// H = sum_{k<l} g_kl (1-sz_k)/2 (1-sz_l)/2.  Power-law: g_kl = J/d(k,l)^alpha
// over all pairs; nearest-neighbour mode (the alpha -> infinity limit):
// g_kl = J on the nn edge set only.

#include "mbqc/geometry.hpp"
#include "mbqc/linalg.hpp"

#include <cmath>
#include <stdexcept>

namespace mbqc {

struct CouplingMatrix {
  int n = 0;
  RealMatrix g;  // (n+1)x(n+1), symmetric, 1-based, zero diagonal

  double operator()(int k, int l) const { return g(k, l); }
};

namespace detail {

inline void check_alpha(double alpha) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha))
    throw std::invalid_argument("couplings: alpha must be finite and >= 0");
}

}  // namespace detail

/// Power-law couplings with a per-bond strength matrix J (1-based, symmetric;
/// only the upper triangle is read).  Used directly by the disorder sampler.
inline CouplingMatrix couplings_with_bonds(const Geometry& geom, double alpha,
                                           const RealMatrix& bond_j) {
  detail::check_alpha(alpha);
  if (bond_j.rows() != geom.n + 1 || bond_j.cols() != geom.n + 1)
    throw std::invalid_argument("couplings: bond matrix has wrong shape");
  CouplingMatrix c;
  c.n = geom.n;
  c.g = RealMatrix::Zero(geom.n + 1, geom.n + 1);
  for (int k = 1; k <= geom.n; ++k)
    for (int l = k + 1; l <= geom.n; ++l) {
      const double d = geom.distance(k, l);
      if (!(d > 0.0))
        throw std::invalid_argument("couplings: nonpositive distance");
      const double g = bond_j(k, l) * std::pow(d, -alpha);
      c.g(k, l) = g;
      c.g(l, k) = g;
    }
  return c;
}

/// Uniform-J power-law couplings.
inline CouplingMatrix couplings(const Geometry& geom, double alpha,
                                double j = 1.0) {
  RealMatrix bond = RealMatrix::Constant(geom.n + 1, geom.n + 1, j);
  return couplings_with_bonds(geom, alpha, bond);
}

/// Nearest-neighbour couplings with a per-bond strength matrix.
inline CouplingMatrix nn_couplings_with_bonds(const Geometry& geom,
                                              const RealMatrix& bond_j) {
  if (bond_j.rows() != geom.n + 1 || bond_j.cols() != geom.n + 1)
    throw std::invalid_argument("couplings: bond matrix has wrong shape");
  CouplingMatrix c;
  c.n = geom.n;
  c.g = RealMatrix::Zero(geom.n + 1, geom.n + 1);
  for (auto [a, b] : geom.nn_edges) {
    c.g(a, b) = bond_j(std::min(a, b), std::max(a, b));
    c.g(b, a) = c.g(a, b);
  }
  return c;
}

/// Nearest-neighbour limit with uniform J.
inline CouplingMatrix nn_couplings(const Geometry& geom, double j = 1.0) {
  RealMatrix bond = RealMatrix::Constant(geom.n + 1, geom.n + 1, j);
  return nn_couplings_with_bonds(geom, bond);
}

}  // namespace mbqc
