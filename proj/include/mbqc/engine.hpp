#pragma once

// Exact state-vector engine for the measurement patterns.  Register
// convention: qubit 1 is the most significant bit of the basis index, so for
// an n-qubit register index b the bit of qubit k is (b >> (n-k)) & 1.

#include "mbqc/couplings.hpp"
#include "mbqc/geometry.hpp"
#include "mbqc/linalg.hpp"
#include "mbqc/measurement.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace mbqc {

inline int qubit_bit(std::uint64_t index, int qubit, int n) {
  return static_cast<int>((index >> (n - qubit)) & 1u);
}

/// |+>^(x) n
inline Vector plus_state(int n) {
  const std::int64_t dim = std::int64_t{1} << n;
  return Vector::Constant(dim, Complex(std::pow(2.0, -0.5 * n), 0.0));
}

/// Product state |e_input> on V_I (bits of `input` in ascending label order,
/// first input qubit = most significant bit) and |+> everywhere else.
inline Vector prepare_input(const Geometry& geom, std::uint32_t input) {
  const int n = geom.n;
  const int ni = static_cast<int>(geom.inputs.size());
  if (ni < 32 && (input >> ni))
    throw std::invalid_argument("prepare_input: input index out of range");
  const std::int64_t dim = std::int64_t{1} << n;
  const double plus_amp =
      std::pow(2.0, -0.5 * static_cast<double>(n - ni));
  Vector psi = Vector::Zero(dim);
  for (std::int64_t b = 0; b < dim; ++b) {
    bool match = true;
    for (int i = 0; i < ni; ++i) {
      const int want = (input >> (ni - 1 - i)) & 1;
      if (qubit_bit(b, geom.inputs[i], n) != want) {
        match = false;
        break;
      }
    }
    if (match) psi(b) = plus_amp;
  }
  return psi;
}

/// exp(-i t H) for the diagonal H = sum_{k<l} g_kl n_k n_l with n = (1-sz)/2.
/// Multiplies each amplitude by exp(-i t sum over pairs of set bits).
inline void evolve_diagonal(Vector& psi, const CouplingMatrix& coup,
                            double t) {
  const std::int64_t dim = psi.size();
  int n = 0;
  while ((std::int64_t{1} << n) < dim) ++n;
  if ((std::int64_t{1} << n) != dim)
    throw std::invalid_argument("evolve_diagonal: dimension not a power of 2");
  if (coup.n != n)
    throw std::invalid_argument("evolve_diagonal: coupling size mismatch");

  struct Pair {
    int k, l;
    double g;
  };
  std::vector<Pair> pairs;
  for (int k = 1; k <= n; ++k)
    for (int l = k + 1; l <= n; ++l)
      if (coup(k, l) != 0.0) pairs.push_back({k, l, coup(k, l)});

  for (std::int64_t b = 0; b < dim; ++b) {
    double phase = 0.0;
    for (const auto& p : pairs)
      if (qubit_bit(b, p.k, n) && qubit_bit(b, p.l, n)) phase += p.g;
    if (phase != 0.0) psi(b) *= std::exp(-kI * (t * phase));
  }
}

namespace detail {

/// Contracts one qubit of an m-qubit vector with a bra; `pos` counts from the
/// most significant qubit.  Returns an (m-1)-qubit vector.
inline Vector contract_qubit(const Vector& psi, int m, int pos,
                             const Eigen::RowVector2cd& bra) {
  const int bit = m - 1 - pos;  // little-endian bit index
  const std::int64_t stride = std::int64_t{1} << bit;
  const std::int64_t low_mask = stride - 1;
  const std::int64_t out_dim = psi.size() / 2;
  Vector out(out_dim);
  for (std::int64_t r = 0; r < out_dim; ++r) {
    const std::int64_t i0 = ((r & ~low_mask) << 1) | (r & low_mask);
    out(r) = bra(0) * psi(i0) + bra(1) * psi(i0 + stride);
  }
  return out;
}

}  // namespace detail

/// Projects the measured qubits of an evolved register state onto the branch
/// bras, leaving a vector on V_O (ascending label order).  Weight factors of
/// unsharp branches are absorbed into the result.
inline Vector project_branch(const Geometry& geom, const MeasurementPlan& plan,
                             const Vector& evolved, std::uint32_t outcome,
                             std::uint32_t beta) {
  const std::vector<int> measured = geom.measured();
  if (static_cast<int>(measured.size()) != plan.size())
    throw std::invalid_argument("project_branch: plan/geometry mismatch");
  for (int j = 0; j < plan.size(); ++j)
    if (plan.qubits[j].qubit != measured[j])
      throw std::invalid_argument("project_branch: plan/geometry mismatch");

  const auto bras = branch_bras(plan, outcome, beta);
  Vector v = evolved;
  std::vector<int> remaining;
  for (int q = 1; q <= geom.n; ++q) remaining.push_back(q);
  int m = geom.n;
  double weight = 1.0;
  for (int j = 0; j < plan.size(); ++j) {
    const int q = plan.qubits[j].qubit;
    int pos = -1;
    for (std::size_t r = 0; r < remaining.size(); ++r)
      if (remaining[r] == q) pos = static_cast<int>(r);
    v = detail::contract_qubit(v, m, pos, bras[j].bra);
    weight *= bras[j].factor;
    remaining.erase(remaining.begin() + pos);
    --m;
  }
  return weight * v;
}

/// One Kraus-level branch of the pattern: recorded outcomes, unsharp branch
/// bits, and the conditional map V (output dim x input dim, weight factors
/// already absorbed).
struct Branch {
  std::uint32_t outcome = 0;
  std::uint32_t beta = 0;
  Matrix v;
};

struct BranchSet {
  int d_in = 0;
  int d_out = 0;
  int n_measured = 0;
  int n_unsharp = 0;
  std::vector<Branch> branches;  // outcome-major, beta-minor, ascending
};

/// Conditional map for one branch: columns are projections of the evolved
/// basis preparations.
inline Matrix conditional_map(const Geometry& geom, const CouplingMatrix& coup,
                              const MeasurementPlan& plan, double t,
                              std::uint32_t outcome, std::uint32_t beta) {
  const int d_in = 1 << geom.inputs.size();
  const int d_out = 1 << geom.outputs.size();
  Matrix v(d_out, d_in);
  for (int col = 0; col < d_in; ++col) {
    Vector psi = prepare_input(geom, static_cast<std::uint32_t>(col));
    evolve_diagonal(psi, coup, t);
    v.col(col) = project_branch(geom, plan, psi, outcome, beta);
  }
  return v;
}

/// All branches of the pattern, reusing the evolved preparations across
/// branches.  For projective plans there are 2^m branches; each unsharp
/// qubit doubles the count.
inline BranchSet conditional_branches(const Geometry& geom,
                                      const CouplingMatrix& coup,
                                      const MeasurementPlan& plan, double t) {
  plan.validate();
  BranchSet set;
  set.d_in = 1 << geom.inputs.size();
  set.d_out = 1 << geom.outputs.size();
  set.n_measured = plan.size();
  set.n_unsharp = plan.n_unsharp();

  std::vector<Vector> evolved(set.d_in);
  for (int col = 0; col < set.d_in; ++col) {
    Vector psi = prepare_input(geom, static_cast<std::uint32_t>(col));
    evolve_diagonal(psi, coup, t);
    evolved[col] = psi;
  }

  const std::uint32_t n_outcomes = 1u << set.n_measured;
  const std::uint32_t n_beta = 1u << set.n_unsharp;
  set.branches.reserve(std::size_t{n_outcomes} * n_beta);
  for (std::uint32_t s = 0; s < n_outcomes; ++s)
    for (std::uint32_t b = 0; b < n_beta; ++b) {
      Branch br;
      br.outcome = s;
      br.beta = b;
      br.v = Matrix(set.d_out, set.d_in);
      for (int col = 0; col < set.d_in; ++col)
        br.v.col(col) = project_branch(geom, plan, evolved[col], s, b);
      set.branches.push_back(std::move(br));
    }
  return set;
}

/// Expectation values of the graph-state stabilizers
/// K^a = sx_a prod_{b in nghb(a)} sz_b for the nn edge set.
struct StabilizerReport {
  std::vector<double> expectation;  // index a-1 for qubit a
  bool all_pass(double tolerance = tol::algebra) const {
    for (double e : expectation)
      if (std::abs(e - 1.0) > tolerance) return false;
    return true;
  }
};

inline StabilizerReport check_cluster_stabilizers(const Vector& psi,
                                                  const Geometry& geom) {
  const std::int64_t dim = psi.size();
  if (dim != (std::int64_t{1} << geom.n))
    throw std::invalid_argument("check_cluster_stabilizers: dimension mismatch");
  StabilizerReport report;
  for (int a = 1; a <= geom.n; ++a) {
    const std::int64_t flip = std::int64_t{1} << (geom.n - a);
    const auto nb = geom.neighbours(a);
    Complex acc = 0.0;
    for (std::int64_t b = 0; b < dim; ++b) {
      int zpar = 0;
      for (int q : nb) zpar ^= qubit_bit(b, q, geom.n);
      const double sign = zpar ? -1.0 : 1.0;
      acc += std::conj(psi(b)) * sign * psi(b ^ flip);
    }
    report.expectation.push_back(real_within(acc, tol::channel));
  }
  return report;
}

}  // namespace mbqc
