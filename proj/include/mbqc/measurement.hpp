#pragma once

// Measurement plans: per-qubit basis angles with feed-forward sign rules, and
// the sharpness parameter lambda of the unsharp POVM
//   P^lambda_s = lambda |eta_s><eta_s| + (1-lambda) I/2 .
// Outcome bits are packed little-endian in measurement order: bit j of an
// outcome word is the outcome s_{j+1} of the j-th measured qubit (ascending
// label order).

#include "mbqc/linalg.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace mbqc {

/// Angle as an affine-parity function of earlier outcomes:
///   eta(s) = base * (-1)^{offset + popcount(s & parity_mask)} .
struct SignRule {
  double base = 0.0;
  std::uint32_t parity_mask = 0;  // bits over measurement-order indices
  int offset = 0;                 // 0 or 1

  double angle(std::uint32_t outcome) const {
    const int parity =
        (offset + std::popcount(outcome & parity_mask)) & 1;
    return parity ? -base : base;
  }
};

struct QubitMeasurement {
  int qubit = 0;          // geometry label
  SignRule rule;
  double lambda = 1.0;    // 1 = projective
};

struct MeasurementPlan {
  std::vector<QubitMeasurement> qubits;  // ascending label = measurement order

  int size() const { return static_cast<int>(qubits.size()); }

  /// Number of unsharp measurements; they must form a prefix of the order.
  int n_unsharp() const {
    int n = 0;
    for (const auto& q : qubits)
      if (q.lambda < 1.0) ++n;
    return n;
  }

  void validate() const {
    if (qubits.empty())
      throw std::invalid_argument("measurement plan: empty");
    bool sharp_seen = false;
    for (std::size_t j = 0; j < qubits.size(); ++j) {
      const auto& q = qubits[j];
      if (q.lambda < 0.0 || q.lambda > 1.0)
        throw std::invalid_argument("measurement plan: lambda outside [0,1]");
      if (q.rule.parity_mask >> j)
        throw std::invalid_argument(
            "measurement plan: sign rule depends on a later outcome");
      if (q.lambda < 1.0 && sharp_seen)
        throw std::invalid_argument(
            "measurement plan: unsharp qubits must form a prefix");
      if (q.lambda == 1.0) sharp_seen = true;
      if (j > 0 && qubits[j].qubit <= qubits[j - 1].qubit)
        throw std::invalid_argument(
            "measurement plan: qubits must be strictly ascending");
    }
  }
};

/// Makes the first n measurements unsharp with the given lambda.
inline MeasurementPlan with_unsharpness(MeasurementPlan plan, double lambda,
                                        int n) {
  if (lambda < 0.0 || lambda > 1.0)
    throw std::invalid_argument("with_unsharpness: lambda outside [0,1]");
  if (n < 0 || n > plan.size())
    throw std::invalid_argument("with_unsharpness: n outside 0..plan size");
  for (int j = 0; j < n; ++j) plan.qubits[j].lambda = lambda;
  return plan;
}

/// One measured qubit's contribution to a branch: the bra to contract with
/// and the scalar weight factor.
struct BranchBra {
  Eigen::RowVector2cd bra;
  double factor = 1.0;
};

/// Bra of the basis state |eta_s> = (|0> + (-1)^s e^{i eta} |1>)/sqrt(2).
inline Eigen::RowVector2cd basis_bra(double eta, int outcome_bit) {
  const Complex phase =
      (outcome_bit ? -1.0 : 1.0) * std::exp(-kI * eta);
  Eigen::RowVector2cd b;
  b << 1.0 / std::sqrt(2.0), phase / std::sqrt(2.0);
  return b;
}

/// Bras and weight factors for one branch.  `outcome` holds the recorded
/// outcomes; `beta` selects, per unsharp qubit, the principal (0) or
/// orthogonal (1) component of sqrt(P^lambda_s) with weights
/// sqrt((1+lambda)/2) and sqrt((1-lambda)/2).  Feed-forward angles always use
/// the recorded outcomes; beta only flips which basis vector is contracted.
inline std::vector<BranchBra> branch_bras(const MeasurementPlan& plan,
                                          std::uint32_t outcome,
                                          std::uint32_t beta) {
  plan.validate();
  const int m = plan.size();
  if (m < 32 && (outcome >> m))
    throw std::invalid_argument("branch_bras: outcome bits out of range");
  const int n = plan.n_unsharp();
  if (n < 32 && (beta >> n))
    throw std::invalid_argument(
        "branch_bras: branch bits only allowed on unsharp qubits");

  std::vector<BranchBra> out;
  out.reserve(m);
  for (int j = 0; j < m; ++j) {
    const auto& q = plan.qubits[j];
    const double eta = q.rule.angle(outcome);
    const int s = (outcome >> j) & 1;
    BranchBra bb;
    if (q.lambda < 1.0) {
      const int b = (beta >> j) & 1;
      bb.bra = basis_bra(eta, s ^ b);
      bb.factor = std::sqrt((b ? (1.0 - q.lambda) : (1.0 + q.lambda)) / 2.0);
    } else {
      bb.bra = basis_bra(eta, s);
      bb.factor = 1.0;
    }
    out.push_back(bb);
  }
  return out;
}

}  // namespace mbqc
