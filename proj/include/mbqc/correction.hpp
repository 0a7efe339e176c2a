#pragma once

// Outcome-dependent Pauli corrections applied to the output register after
// the pattern runs.  Three policy families are supported: free per-outcome
// assignment, affine (linear-in-outcomes) rules per output qubit, and fixed
// byproduct rules.

#include "mbqc/linalg.hpp"

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace mbqc {

/// Single-qubit Pauli exponents; the operator is sx^x sz^z (sz applied
/// first).  Encoded 0=I, 1=X, 2=Z, 3=XZ.
struct PauliExp {
  int x = 0;
  int z = 0;
};

inline int pauli_code(const PauliExp& p) { return p.x + 2 * p.z; }

inline PauliExp pauli_from_code(int code) {
  if (code < 0 || code > 3)
    throw std::invalid_argument("pauli_from_code: code must be in 0..3");
  return {code & 1, (code >> 1) & 1};
}

/// Pauli string over the output register, qubit-major: factor 0 acts on the
/// first (most significant) output qubit.
using PauliString = std::vector<PauliExp>;

inline Matrix pauli_string_matrix(const PauliString& ps) {
  Matrix m = identity(1);
  for (const auto& p : ps) m = kron(m, pauli_xz(p.x, p.z)).eval();
  return m;
}

/// Index of a Pauli string in the lexicographic enumeration used by the
/// per-outcome optimizer: base-4 digits, first qubit most significant.
inline int pauli_string_index(const PauliString& ps) {
  int idx = 0;
  for (const auto& p : ps) idx = 4 * idx + pauli_code(p);
  return idx;
}

inline PauliString pauli_string_from_index(int index, int n_qubits) {
  PauliString ps(n_qubits);
  for (int q = n_qubits - 1; q >= 0; --q) {
    ps[q] = pauli_from_code(index & 3);
    index >>= 2;
  }
  if (index != 0)
    throw std::invalid_argument("pauli_string_from_index: index out of range");
  return ps;
}

/// Affine byproduct rule for one output qubit:
///   x exponent = x0 + popcount(outcome & xmask)  (mod 2)
///   z exponent = z0 + popcount(outcome & zmask)  (mod 2)
struct AffineRule {
  int x0 = 0;
  std::uint32_t xmask = 0;
  int z0 = 0;
  std::uint32_t zmask = 0;

  PauliExp at(std::uint32_t outcome) const {
    const int x = (x0 + popcount32(outcome & xmask)) & 1;
    const int z = (z0 + popcount32(outcome & zmask)) & 1;
    return {x, z};
  }

  static int popcount32(std::uint32_t v) {
    int c = 0;
    while (v) {
      c += static_cast<int>(v & 1u);
      v >>= 1;
    }
    return c;
  }
};

enum class PolicyKind { PerOutcome, Affine, FixedPmbqc };

/// Map from measurement outcome to the correction Pauli string on the output
/// register.  Per-outcome policies store an explicit table; affine and fixed
/// policies store per-qubit rules (a fixed rule is an affine rule whose masks
/// may still depend on outcomes -- "fixed" says how it was chosen, not its shape).
class CorrectionPolicy {
 public:
  static CorrectionPolicy per_outcome(int n_measured,
                                      std::vector<PauliString> table) {
    if (static_cast<std::size_t>(1) << n_measured != table.size())
      throw std::invalid_argument("per_outcome: table size mismatch");
    CorrectionPolicy p;
    p.kind_ = PolicyKind::PerOutcome;
    p.n_measured_ = n_measured;
    p.n_outputs_ = table.empty() ? 0 : static_cast<int>(table.front().size());
    for (const auto& ps : table)
      if (static_cast<int>(ps.size()) != p.n_outputs_)
        throw std::invalid_argument("per_outcome: ragged table");
    p.table_ = std::move(table);
    return p;
  }

  static CorrectionPolicy affine(int n_measured, std::vector<AffineRule> rules,
                                 PolicyKind kind = PolicyKind::Affine) {
    if (kind == PolicyKind::PerOutcome)
      throw std::invalid_argument("affine: wrong policy kind");
    CorrectionPolicy p;
    p.kind_ = kind;
    p.n_measured_ = n_measured;
    p.n_outputs_ = static_cast<int>(rules.size());
    const std::uint32_t valid = (n_measured >= 32)
                                    ? 0xffffffffu
                                    : ((1u << n_measured) - 1u);
    for (const auto& r : rules)
      if ((r.xmask & ~valid) || (r.zmask & ~valid))
        throw std::invalid_argument("affine: mask references unknown outcome");
    p.rules_ = std::move(rules);
    return p;
  }

  static CorrectionPolicy fixed(int n_measured, std::vector<AffineRule> rules) {
    return affine(n_measured, std::move(rules), PolicyKind::FixedPmbqc);
  }

  PolicyKind kind() const { return kind_; }
  int n_measured() const { return n_measured_; }
  int n_outputs() const { return n_outputs_; }

  PauliString at(std::uint32_t outcome) const {
    check_outcome(outcome);
    if (kind_ == PolicyKind::PerOutcome) return table_[outcome];
    PauliString ps;
    ps.reserve(rules_.size());
    for (const auto& r : rules_) ps.push_back(r.at(outcome));
    return ps;
  }

  Matrix matrix(std::uint32_t outcome) const {
    return pauli_string_matrix(at(outcome));
  }

  /// Explicit outcome -> string table (any kind).
  std::vector<PauliString> expand() const {
    std::vector<PauliString> table;
    const std::uint32_t n = 1u << n_measured_;
    table.reserve(n);
    for (std::uint32_t s = 0; s < n; ++s) table.push_back(at(s));
    return table;
  }

  const std::vector<AffineRule>& rules() const {
    if (kind_ == PolicyKind::PerOutcome)
      throw std::logic_error("rules: per-outcome policy has no affine rules");
    return rules_;
  }

 private:
  void check_outcome(std::uint32_t outcome) const {
    if (n_measured_ < 32 && (outcome >> n_measured_))
      throw std::invalid_argument("CorrectionPolicy: outcome out of range");
  }

  PolicyKind kind_ = PolicyKind::FixedPmbqc;
  int n_measured_ = 0;
  int n_outputs_ = 0;
  std::vector<PauliString> table_;
  std::vector<AffineRule> rules_;
};

}  // namespace mbqc
