#pragma once

// Gate catalogue: target unitaries, measurement plans with feed-forward sign
// rules, fixed byproduct-correction policies, and closed-form restricted
// fidelities for the single-qubit patterns on the five-qubit chain.

#include "mbqc/correction.hpp"
#include "mbqc/geometry.hpp"
#include "mbqc/linalg.hpp"
#include "mbqc/measurement.hpp"

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mbqc {

inline Matrix rot_x(double theta) {
  Matrix m(2, 2);
  m << std::cos(theta / 2), -kI * std::sin(theta / 2),
      -kI * std::sin(theta / 2), std::cos(theta / 2);
  return m;
}

inline Matrix rot_z(double theta) {
  Matrix m(2, 2);
  m << std::exp(-kI * (theta / 2)), 0.0, 0.0, std::exp(kI * (theta / 2));
  return m;
}

/// Everything needed to simulate and score one gate pattern.
struct GateSpec {
  std::string name;          // canonical name
  int d = 2;                 // logical dimension
  Matrix target;             // target unitary (global phase irrelevant)
  Geometry geometry;         // qubit layout
  MeasurementPlan plan;      // measurement angles with feed-forward
  CorrectionPolicy pmbqc;    // fixed byproduct policy
  bool has_closed_form = false;  // restricted fidelity known analytically
};

namespace detail {

/// Plan for the five-qubit wire: angles (eta1..eta4) on qubits 1..4 with the
/// feed-forward signs of the generic x-z-x rotation pattern,
///   eta1 = 0
///   eta2 = theta2 * (-1)^(s1+1)
///   eta3 = -theta3 * (-1)^s2
///   eta4 = -theta4 * (-1)^(s1+s3)
/// Outcome bit j-1 is the outcome of qubit j.
inline MeasurementPlan rotation_plan(double theta2, double theta3,
                                     double theta4) {
  MeasurementPlan plan;
  plan.qubits = {
      {1, SignRule{0.0, 0u, 0}, 1.0},
      {2, SignRule{theta2, 0b0001u, 1}, 1.0},
      {3, SignRule{-theta3, 0b0010u, 0}, 1.0},
      {4, SignRule{-theta4, 0b0101u, 0}, 1.0},
  };
  plan.validate();
  return plan;
}

/// Byproduct rule sx^(s2+s4) sz^(s1+s3) (extra_z adds a constant sz).
inline CorrectionPolicy wire_byproduct(int extra_z) {
  AffineRule r;
  r.x0 = 0;
  r.xmask = 0b1010u;
  r.z0 = extra_z & 1;
  r.zmask = 0b0101u;
  return CorrectionPolicy::fixed(4, {r});
}

}  // namespace detail

/// Pattern for the generic rotation exp(-i theta1) Rx(theta2) Rz(theta3)
/// Rx(theta4) on the five-qubit wire, with byproduct sx^(s2+s4) sz^(s1+s3).
inline GateSpec rotation_gate_spec(const std::string& name, double theta1,
                                   double theta2, double theta3,
                                   double theta4) {
  GateSpec spec;
  spec.name = name;
  spec.d = 2;
  spec.target = std::exp(-kI * theta1) * rot_x(theta2) * rot_z(theta3) *
                rot_x(theta4);
  spec.geometry = chain5_geometry();
  spec.plan = detail::rotation_plan(theta2, theta3, theta4);
  spec.pmbqc = detail::wire_byproduct(0);
  return spec;
}

inline std::string canonical_gate_name(const std::string& name) {
  if (name == "H" || name == "h" || name == "hadamard") return "H";
  if (name == "Rz(pi/2)" || name == "rz" || name == "RZ" || name == "S" ||
      name == "s" || name == "phase" || name == "rz(pi/2)")
    return "Rz(pi/2)";
  if (name == "T" || name == "t") return "T";
  if (name == "CNOT" || name == "cnot" || name == "CX" || name == "cx")
    return "CNOT";
  throw std::invalid_argument("unknown gate: " + name);
}

inline std::vector<std::string> gate_names() {
  return {"H", "Rz(pi/2)", "T", "CNOT"};
}

/// Gate catalogue.  The Hadamard pattern uses the sign convention
/// eta2 = -theta2 * (-1)^(s1+1) together with an extra constant sz in the
/// byproduct; the pair reproduces H exactly on every outcome branch in the
/// nearest-neighbour limit.
inline GateSpec gate_spec(const std::string& gate,
                          std::optional<DistanceMode> mode = std::nullopt) {
  const std::string name = canonical_gate_name(gate);
  GateSpec spec;
  if (name == "H") {
    spec = rotation_gate_spec("H", kPi / 2, kPi / 2, kPi / 2, kPi / 2);
    Matrix h(2, 2);
    h << 1, 1, 1, -1;
    spec.target = h / std::sqrt(2.0);
    spec.plan.qubits[1].rule.base = -kPi / 2;  // eta2 sign flip
    spec.pmbqc = detail::wire_byproduct(1);
    spec.has_closed_form = true;
  } else if (name == "Rz(pi/2)") {
    spec = rotation_gate_spec("Rz(pi/2)", 0.0, 0.0, kPi / 2, 0.0);
    spec.has_closed_form = true;
  } else if (name == "T") {
    spec = rotation_gate_spec("T", 0.0, 0.0, kPi / 4, 0.0);
    spec.has_closed_form = true;
  } else {
    spec.name = "CNOT";
    spec.d = 4;
    Matrix cx = Matrix::Zero(4, 4);
    // Input: qubit 1 = target (high bit), qubit 4 = control (low bit);
    // output: qubit 3 = target, qubit 4 = control.
    cx(0, 0) = 1;
    cx(3, 1) = 1;
    cx(2, 2) = 1;
    cx(1, 3) = 1;
    spec.target = cx;
    spec.geometry = mode ? cnot_geometry(*mode) : cnot_geometry();
    MeasurementPlan plan;
    plan.qubits = {
        {1, SignRule{0.0, 0u, 0}, 1.0},
        {2, SignRule{0.0, 0u, 0}, 1.0},
    };
    plan.validate();
    spec.plan = plan;
    // sz^s1 sx^s2 on the target output (qubit 3), sz^s1 on the control.
    AffineRule target_out{/*x0=*/0, /*xmask=*/0b10u, /*z0=*/0,
                          /*zmask=*/0b01u};
    AffineRule control_out{0, 0u, 0, 0b01u};
    spec.pmbqc = CorrectionPolicy::fixed(2, {target_out, control_out});
    return spec;
  }
  if (mode) spec.geometry = chain5_geometry(*mode);
  return spec;
}

/// Closed-form restricted (fixed-byproduct) gate fidelity on the five-qubit
/// chain with couplings pi / |k-l|^alpha, as a function of alpha.
inline double analytic_restricted_fidelity(const std::string& gate,
                                           double alpha) {
  const std::string name = canonical_gate_name(gate);
  const double a2 = kPi * std::pow(2.0, -alpha);
  const double a3 = kPi * std::pow(3.0, -alpha);
  const double a4 = kPi * std::pow(4.0, -alpha);
  const double b3 = a2 + a3;
  const double b4 = b3 + a4;
  using std::cos;
  using std::sin;
  if (name == "H") {
    return (28.0 + 2.0 * cos(a2) + 4.0 * cos(b3) +
            2.0 * cos(2.0 * a2) * (cos(a4) + cos(b4)) +
            cos(a2) * (3.0 * cos(a4) + 2.0 * cos(b3) + 4.0 * cos(b4) +
                       cos(b3 + b4))) /
           48.0;
  }
  if (name == "Rz(pi/2)") {
    return (27.0 + cos(2.0 * a2) + 3.0 * cos(a2) + 3.0 * cos(a3) +
            2.0 * cos(b3) + cos(b3 + a2) + cos(b3 + a3) +
            2.0 * cos(a2) * (cos(a2 + a4) + cos(a3 + a4) + cos(a3) + cos(b4) +
                             cos(b3 + b4))) /
           48.0;
  }
  if (name == "T") {
    return (53.0 + cos(2.0 * a2) + 8.0 * cos(a2) + 6.0 * cos(a3) +
            4.0 * cos(b3) + 2.0 * cos(b3 + a2) + 2.0 * cos(b3 + a3) +
            cos(a2) * (4.0 * cos(a3) + cos(a4) + 3.0 * cos(a2 + a4) +
                       2.0 * cos(a3 + a4) + 6.0 * cos(b4) + cos(a3 + b4) +
                       3.0 * cos(b3 + b4) - sin(a4) + sin(a2 + a4) +
                       2.0 * sin(a3 + a4) - 2.0 * sin(b4) - sin(a3 + b4) +
                       sin(b3 + b4))) /
           96.0;
  }
  throw std::invalid_argument("no closed-form fidelity for gate: " + name);
}

}  // namespace mbqc
