#pragma once

// Small dense complex linear algebra helpers shared by the whole library.
// Everything here operates on Eigen dynamic matrices; the dimensions in this
// project are tiny (state vectors up to 2^12, operators up to 16x16), so no
// attempt is made at sparse or fixed-size specialisations.

#include <Eigen/Dense>

#include <complex>
#include <numbers>
#include <stdexcept>

namespace mbqc {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr Complex kI{0.0, 1.0};

// Tolerance ladder used throughout: exact algebraic identities, channel-level
// checks, and optimisation/threshold comparisons.
namespace tol {
inline constexpr double algebra = 1e-12;
inline constexpr double channel = 1e-10;
inline constexpr double optimization = 1e-6;
}  // namespace tol

inline Matrix identity(int d) { return Matrix::Identity(d, d); }

inline Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

inline Matrix pauli_y() {
  Matrix m(2, 2);
  m << 0, -kI, kI, 0;
  return m;
}

inline Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

/// sigma_x^x * sigma_z^z for exponents in {0,1} (matrix product, sigma_z
/// applied first).  Y never appears explicitly: it equals i * XZ and global
/// phases are irrelevant everywhere this is used.
inline Matrix pauli_xz(int x, int z) {
  if ((x != 0 && x != 1) || (z != 0 && z != 1))
    throw std::invalid_argument("pauli_xz: exponents must be 0 or 1");
  Matrix m = identity(2);
  if (z) m = pauli_z() * m;
  if (x) m = pauli_x() * m;
  return m;
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

inline bool approx_equal(const Matrix& a, const Matrix& b,
                         double tolerance = tol::algebra) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return max_abs(a - b) <= tolerance;
}

inline bool is_unitary(const Matrix& u, double tolerance = tol::channel) {
  if (u.rows() != u.cols()) return false;
  return max_abs(u.adjoint() * u - identity(static_cast<int>(u.rows()))) <=
         tolerance;
}

/// True if a == c*b for some unimodular scalar c (global-phase equivalence).
inline bool equal_up_to_phase(const Matrix& a, const Matrix& b,
                              double tolerance = tol::algebra) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  // Find the largest entry of b to fix the phase.
  Eigen::Index r = 0, c = 0;
  b.cwiseAbs().maxCoeff(&r, &c);
  if (std::abs(b(r, c)) <= tolerance) return max_abs(a) <= tolerance;
  const Complex phase = a(r, c) / b(r, c);
  if (std::abs(std::abs(phase) - 1.0) > tolerance) return false;
  return max_abs(a - phase * b) <= tolerance;
}

/// Discards a numerically tiny imaginary part; loud failure otherwise.
inline double real_within(const Complex& z, double tolerance) {
  if (std::abs(z.imag()) > tolerance)
    throw std::runtime_error("real_within: imaginary residue " +
                             std::to_string(z.imag()) + " exceeds tolerance");
  return z.real();
}

}  // namespace mbqc
