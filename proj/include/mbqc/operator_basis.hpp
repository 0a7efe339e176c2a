#pragma once

// Orthogonal unitary operator bases used by the average-gate-fidelity
// formula: the Pauli basis for qubits (d=2) and the Heisenberg-Weyl basis for
// d=4.  Elements satisfy Tr(U_i^dag U_j) = d * delta_ij and ops[0] is the
// identity.

#include "mbqc/linalg.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace mbqc {

struct OperatorBasis {
  int d = 0;
  std::vector<Matrix> ops;  // d*d unitaries, ops[0] == identity
};

namespace detail {

/// Clock operator Z = sum_k omega^k |k><k| with omega = exp(2*pi*i/d).
inline Matrix clock_operator(int d) {
  Matrix z = Matrix::Zero(d, d);
  for (int k = 0; k < d; ++k)
    z(k, k) = std::exp(kI * (2.0 * kPi * k / d));
  return z;
}

/// Cyclic shift X|k> = |k-1 mod d>.  Indices are taken modulo d; anything
/// else would not even be unitary.
inline Matrix shift_operator(int d) {
  Matrix x = Matrix::Zero(d, d);
  for (int k = 0; k < d; ++k)
    x(((k - 1) % d + d) % d, k) = 1.0;
  return x;
}

}  // namespace detail

/// Heisenberg-Weyl element U_ij = omega^{-ij/2} Z^i X^j.
inline Matrix heisenberg_weyl(int d, int i, int j) {
  const Matrix z = detail::clock_operator(d);
  const Matrix x = detail::shift_operator(d);
  Matrix zi = identity(d), xj = identity(d);
  for (int k = 0; k < i; ++k) zi = zi * z;
  for (int k = 0; k < j; ++k) xj = xj * x;
  const Complex phase = std::exp(-kI * (kPi * i * j / d));
  return phase * zi * xj;
}

/// Basis for the supported dimensions: Pauli {I, sx, sy, sz} for d=2,
/// Heisenberg-Weyl {U_ij} (row-major in (i,j)) for d=4.
inline OperatorBasis operator_basis(int d) {
  OperatorBasis basis;
  basis.d = d;
  if (d == 2) {
    basis.ops = {identity(2), pauli_x(), pauli_y(), pauli_z()};
  } else if (d == 4) {
    basis.ops.reserve(16);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        basis.ops.push_back(heisenberg_weyl(4, i, j));
  } else {
    throw std::invalid_argument("operator_basis: only d=2 and d=4 supported");
  }
  return basis;
}

}  // namespace mbqc
