#pragma once

// Average gate fidelity of the corrected pattern channel, and optimization
// of the correction policy over the per-outcome, affine, and fixed families.

#include "mbqc/channel_repr.hpp"
#include "mbqc/correction.hpp"
#include "mbqc/engine.hpp"
#include "mbqc/operator_basis.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace mbqc {

/// Best classically achievable average fidelity, 2/(d+1).
inline double classical_threshold(int d) {
  if (d < 2) throw std::invalid_argument("classical_threshold: d must be >= 2");
  return 2.0 / (d + 1);
}

/// Kraus operators of the corrected channel: apply the policy's Pauli string
/// for the recorded outcome to every branch map.
inline ChannelRepr assemble_channel(const BranchSet& set,
                                    const CorrectionPolicy& policy) {
  if (policy.n_measured() != set.n_measured)
    throw std::invalid_argument("assemble_channel: outcome count mismatch");
  if ((1 << policy.n_outputs()) != set.d_out)
    throw std::invalid_argument("assemble_channel: output dimension mismatch");
  std::vector<Matrix> kraus;
  kraus.reserve(set.branches.size());
  for (const auto& br : set.branches)
    kraus.push_back(policy.matrix(br.outcome) * br.v);
  return ChannelRepr(std::move(kraus));
}

/// Entanglement fidelity sum_k |Tr(G^dag K_k)|^2 / d^2.
inline double entanglement_fidelity(const std::vector<Matrix>& kraus,
                                    const Matrix& target) {
  const int d = static_cast<int>(target.rows());
  double acc = 0.0;
  for (const auto& k : kraus) acc += std::norm((target.adjoint() * k).trace());
  return acc / (static_cast<double>(d) * d);
}

/// Average gate fidelity
///   F = (d^2 + sum_i Tr(G U_i^dag G^dag Lambda(U_i))) / (d^2 (d+1))
/// with the sum over a full orthogonal unitary operator basis (identity
/// included).  Cross-checked internally against the entanglement-fidelity
/// form F = (d F_e + 1)/(d + 1).
inline double average_gate_fidelity(const ChannelRepr& channel,
                                    const Matrix& target) {
  const int d = channel.d_in();
  if (channel.d_out() != d)
    throw std::invalid_argument("average_gate_fidelity: channel not square");
  if (target.rows() != d || target.cols() != d)
    throw std::invalid_argument("average_gate_fidelity: dimension mismatch");
  if (!is_unitary(target))
    throw std::invalid_argument("average_gate_fidelity: target not unitary");

  const OperatorBasis basis = operator_basis(d);
  Complex acc = 0.0;
  for (const auto& u : basis.ops) {
    const Matrix lhs = target * u.adjoint() * target.adjoint();
    acc += (lhs * channel.apply(u)).trace();
  }
  const double dd = static_cast<double>(d) * d;
  const double fid = (dd + real_within(acc, tol::channel)) / (dd * (d + 1));

  const double fe = entanglement_fidelity(channel.kraus(), target);
  const double fid_fe = (d * fe + 1.0) / (d + 1);
  if (std::abs(fid - fid_fe) > tol::algebra)
    throw std::logic_error("average_gate_fidelity: basis/entanglement forms disagree");
  return fid;
}

/// Contribution of outcome s under candidate correction P:
///   c(s, P) = sum_i Tr(G U_i^dag G^dag P R_s(U_i) P^dag),
/// R_s(X) = sum_beta V_{s,beta} X V_{s,beta}^dag.  The corrected fidelity of
/// a policy decomposes as F = (d^2 + sum_s c(s, P(s))) / (d^2 (d+1)), so each
/// outcome can be optimized independently.
struct ContributionTable {
  int n_measured = 0;
  int n_outputs = 0;
  int d = 0;
  RealMatrix c;  // rows: outcomes, cols: Pauli-string index

  int n_outcomes() const { return 1 << n_measured; }
  int n_strings() const { return 1 << (2 * n_outputs); }
};

inline ContributionTable build_contribution_table(const BranchSet& set,
                                                  const Matrix& target) {
  if (set.d_in != set.d_out)
    throw std::invalid_argument("build_contribution_table: map not square");
  const int d = set.d_out;
  if (target.rows() != d || target.cols() != d)
    throw std::invalid_argument("build_contribution_table: dimension mismatch");

  ContributionTable table;
  table.n_measured = set.n_measured;
  table.d = d;
  table.n_outputs = 0;
  while ((1 << table.n_outputs) < d) ++table.n_outputs;

  const OperatorBasis basis = operator_basis(d);
  const int n_strings = table.n_strings();
  std::vector<Matrix> paulis;
  paulis.reserve(n_strings);
  for (int p = 0; p < n_strings; ++p)
    paulis.push_back(
        pauli_string_matrix(pauli_string_from_index(p, table.n_outputs)));

  table.c = RealMatrix::Zero(table.n_outcomes(), n_strings);
  const std::uint32_t n_beta = 1u << set.n_unsharp;
  for (std::uint32_t s = 0; s < static_cast<std::uint32_t>(table.n_outcomes());
       ++s) {
    // R_s(U_i) accumulated over the unsharp branches of this outcome.
    std::vector<Matrix> r_s(basis.ops.size(), Matrix::Zero(d, d));
    for (std::uint32_t b = 0; b < n_beta; ++b) {
      const Branch& br = set.branches[std::size_t{s} * n_beta + b];
      for (std::size_t i = 0; i < basis.ops.size(); ++i)
        r_s[i] += br.v * basis.ops[i] * br.v.adjoint();
    }
    for (int p = 0; p < n_strings; ++p) {
      Complex acc = 0.0;
      for (std::size_t i = 0; i < basis.ops.size(); ++i) {
        const Matrix lhs =
            target * basis.ops[i].adjoint() * target.adjoint() * paulis[p];
        acc += (lhs * r_s[i] * paulis[p].adjoint()).trace();
      }
      table.c(s, p) = real_within(acc, tol::channel);
    }
  }
  return table;
}

inline double fidelity_from_table(const ContributionTable& table,
                                  const CorrectionPolicy& policy) {
  if (policy.n_measured() != table.n_measured ||
      policy.n_outputs() != table.n_outputs)
    throw std::invalid_argument("fidelity_from_table: policy shape mismatch");
  double acc = 0.0;
  for (int s = 0; s < table.n_outcomes(); ++s)
    acc += table.c(s, pauli_string_index(policy.at(s)));
  const double dd = static_cast<double>(table.d) * table.d;
  return (dd + acc) / (dd * (table.d + 1));
}

struct OptimizationResult {
  CorrectionPolicy policy;
  double fidelity = 0.0;
};

/// Free per-outcome optimization: argmax of each table row.  Ties resolve to
/// the lowest string index (lexicographic I < X < Z < XZ, first output qubit
/// most significant).
inline OptimizationResult optimize_per_outcome(const ContributionTable& table) {
  std::vector<PauliString> assignment;
  double acc = 0.0;
  for (int s = 0; s < table.n_outcomes(); ++s) {
    int best = 0;
    for (int p = 1; p < table.n_strings(); ++p)
      if (table.c(s, p) > table.c(s, best)) best = p;
    assignment.push_back(pauli_string_from_index(best, table.n_outputs));
    acc += table.c(s, best);
  }
  OptimizationResult result{
      CorrectionPolicy::per_outcome(table.n_measured, std::move(assignment)),
      0.0};
  const double dd = static_cast<double>(table.d) * table.d;
  result.fidelity = (dd + acc) / (dd * (table.d + 1));
  return result;
}

/// Affine optimization: exhaustive search over outcome-linear byproduct rules
///   sx^(x0 + x.s) sz^(z0 + z.s)
/// per output qubit (all qubits jointly).  Ties resolve to the first rule in
/// enumeration order.
inline OptimizationResult optimize_affine(const ContributionTable& table) {
  const int m = table.n_measured;
  const int n_out = table.n_outputs;
  const int bits_per_rule = 2 * (m + 1);
  if (bits_per_rule * n_out > 26)
    throw std::invalid_argument("optimize_affine: search space too large");
  const std::uint32_t n_rules = 1u << bits_per_rule;
  const std::uint32_t mask_m = (1u << m) - 1u;
  const int n_outcomes = table.n_outcomes();

  auto decode = [&](std::uint32_t r) {
    AffineRule rule;
    rule.x0 = static_cast<int>(r & 1u);
    rule.z0 = static_cast<int>((r >> 1) & 1u);
    rule.xmask = (r >> 2) & mask_m;
    rule.zmask = (r >> (2 + m)) & mask_m;
    return rule;
  };

  // Pauli code of each (qubit rule, outcome) pair.
  std::vector<std::vector<int>> code(n_rules, std::vector<int>(n_outcomes));
  for (std::uint32_t r = 0; r < n_rules; ++r) {
    const AffineRule rule = decode(r);
    for (int s = 0; s < n_outcomes; ++s)
      code[r][s] = pauli_code(rule.at(static_cast<std::uint32_t>(s)));
  }

  const std::uint64_t n_joint = std::uint64_t{1} << (bits_per_rule * n_out);
  std::uint64_t best_joint = 0;
  double best_total = 0.0;
  bool have_best = false;
  std::vector<std::uint32_t> rule_of_qubit(n_out);
  for (std::uint64_t joint = 0; joint < n_joint; ++joint) {
    std::uint64_t rest = joint;
    // Last output qubit occupies the least significant block.
    for (int q = n_out - 1; q >= 0; --q) {
      rule_of_qubit[q] = static_cast<std::uint32_t>(rest & (n_rules - 1));
      rest >>= bits_per_rule;
    }
    double total = 0.0;
    for (int s = 0; s < n_outcomes; ++s) {
      int idx = 0;
      for (int q = 0; q < n_out; ++q) idx = 4 * idx + code[rule_of_qubit[q]][s];
      total += table.c(s, idx);
    }
    if (!have_best || total > best_total) {
      have_best = true;
      best_total = total;
      best_joint = joint;
    }
  }

  std::vector<AffineRule> rules(n_out);
  std::uint64_t rest = best_joint;
  for (int q = n_out - 1; q >= 0; --q) {
    rules[q] = decode(static_cast<std::uint32_t>(rest & (n_rules - 1)));
    rest >>= bits_per_rule;
  }
  OptimizationResult result{CorrectionPolicy::affine(m, std::move(rules)), 0.0};
  const double dd = static_cast<double>(table.d) * table.d;
  result.fidelity = (dd + best_total) / (dd * (table.d + 1));
  return result;
}

/// Fidelity of a branch set under a given policy, via the assembled channel.
inline double fidelity_with_policy(const BranchSet& set,
                                   const CorrectionPolicy& policy,
                                   const Matrix& target) {
  return average_gate_fidelity(assemble_channel(set, policy), target);
}

}  // namespace mbqc
