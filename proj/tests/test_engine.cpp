// State-vector engine vs the independent Kronecker-product oracle, register
// conventions, plan validation, and graph-state stabilizers.

#include <catch2/catch_amalgamated.hpp>

#include "mbqc/mbqc.hpp"
#include "oracles.hpp"

#include <cmath>

using namespace mbqc;

namespace {

// Every branch map of the engine against the oracle construction.
void compare_all_branches(const GateSpec& spec, const MeasurementPlan& plan,
                          double alpha) {
  const CouplingMatrix cm = couplings(spec.geometry, alpha);
  const BranchSet set =
      conditional_branches(spec.geometry, cm, plan, kPi);
  const std::uint32_t n_beta = 1u << set.n_unsharp;
  REQUIRE(set.branches.size() ==
          (std::size_t{1} << set.n_measured) * n_beta);
  for (const auto& br : set.branches) {
    const Matrix want =
        testing::branch_map(spec.geometry, plan, cm, kPi, br.outcome, br.beta);
    INFO("outcome " << br.outcome << " beta " << br.beta);
    CHECK(max_abs(br.v - want) <= tol::algebra);
  }
}

}  // namespace

TEST_CASE("register conventions") {
  // Qubit 1 is the most significant bit of the basis index.
  CHECK(qubit_bit(0b10000, 1, 5) == 1);
  CHECK(qubit_bit(0b10000, 5, 5) == 0);
  CHECK(qubit_bit(0b00001, 5, 5) == 1);

  const Vector plus = plus_state(3);
  REQUIRE(plus.size() == 8);
  for (int b = 0; b < 8; ++b)
    CHECK(std::abs(plus(b) - Complex(std::pow(8.0, -0.5), 0.0)) <=
          tol::algebra);
}

TEST_CASE("input preparation on the two-input layout") {
  const Geometry geom = cnot_geometry();
  // Input word 0b10: qubit 1 (first input) = 1, qubit 4 = 0.
  const Vector psi = prepare_input(geom, 0b10);
  const int n = geom.n;
  for (std::int64_t b = 0; b < psi.size(); ++b) {
    const bool keep = qubit_bit(b, 1, n) == 1 && qubit_bit(b, 4, n) == 0;
    if (keep)
      CHECK(std::abs(psi(b) - Complex(0.5, 0.0)) <= tol::algebra);
    else
      CHECK(std::abs(psi(b)) == 0.0);
  }
  CHECK_THROWS_AS(prepare_input(geom, 4), std::invalid_argument);

  const Geometry chain = chain5_geometry();
  const Vector against =
      testing::input_state(chain, 1);
  CHECK(max_abs(prepare_input(chain, 1) - against) <= tol::algebra);
}

TEST_CASE("diagonal evolution matches the dense oracle") {
  const Geometry geom = chain5_geometry();
  const CouplingMatrix cm = couplings(geom, 1.234);
  Vector psi = prepare_input(geom, 1);
  const Matrix u = testing::evolution_unitary(geom, cm, kPi);
  const Vector want = u * psi;
  evolve_diagonal(psi, cm, kPi);
  CHECK(max_abs(psi - want) <= tol::algebra);
}

TEST_CASE("branch maps match the oracle on the chain") {
  const GateSpec spec = gate_spec("H");
  compare_all_branches(spec, spec.plan, 1.234);
  compare_all_branches(spec, with_unsharpness(spec.plan, 0.8, 2), 1.234);
}

TEST_CASE("branch maps match the oracle on the two-input layout") {
  const GateSpec spec = gate_spec("CNOT");
  compare_all_branches(spec, spec.plan, 1.234);
  compare_all_branches(spec, with_unsharpness(spec.plan, 0.65, 1), 1.234);
}

TEST_CASE("branch sets are ordered and complete") {
  const GateSpec spec = gate_spec("T");
  const CouplingMatrix cm = couplings(spec.geometry, 0.9);
  for (int n_unsharp : {0, 2}) {
    const MeasurementPlan plan =
        n_unsharp ? with_unsharpness(spec.plan, 0.7, n_unsharp) : spec.plan;
    const BranchSet set =
        conditional_branches(spec.geometry, cm, plan, kPi);
    const std::uint32_t n_beta = 1u << set.n_unsharp;
    CHECK(set.n_unsharp == n_unsharp);
    Matrix acc = Matrix::Zero(set.d_in, set.d_in);
    for (std::size_t i = 0; i < set.branches.size(); ++i) {
      const auto& br = set.branches[i];
      CHECK(br.outcome == i / n_beta);
      CHECK(br.beta == i % n_beta);
      acc += br.v.adjoint() * br.v;
    }
    CHECK(max_abs(acc - identity(set.d_in)) <= tol::algebra);
  }
}

TEST_CASE("feed-forward angles of the Hadamard plan") {
  const MeasurementPlan plan = gate_spec("H").plan;
  REQUIRE(plan.size() == 4);
  // All outcomes 0: eta = (0, pi/2, -pi/2, -pi/2).
  CHECK(plan.qubits[0].rule.angle(0) == 0.0);
  CHECK(plan.qubits[1].rule.angle(0) == Catch::Approx(kPi / 2));
  CHECK(plan.qubits[2].rule.angle(0) == Catch::Approx(-kPi / 2));
  CHECK(plan.qubits[3].rule.angle(0) == Catch::Approx(-kPi / 2));
  // s1 = 1 flips eta2; s2 = 1 flips eta3; s1 + s3 odd flips eta4.
  CHECK(plan.qubits[1].rule.angle(0b0001) == Catch::Approx(-kPi / 2));
  CHECK(plan.qubits[2].rule.angle(0b0010) == Catch::Approx(kPi / 2));
  CHECK(plan.qubits[3].rule.angle(0b0100) == Catch::Approx(kPi / 2));
  CHECK(plan.qubits[3].rule.angle(0b0101) == Catch::Approx(-kPi / 2));
}

TEST_CASE("plan validation rejects malformed plans") {
  MeasurementPlan bad_order;
  bad_order.qubits = {{2, SignRule{}, 1.0}, {1, SignRule{}, 1.0}};
  CHECK_THROWS_AS(bad_order.validate(), std::invalid_argument);

  MeasurementPlan future;
  future.qubits = {{1, SignRule{0.0, 0b10u, 0}, 1.0}, {2, SignRule{}, 1.0}};
  CHECK_THROWS_AS(future.validate(), std::invalid_argument);

  MeasurementPlan gap;  // unsharp qubit after a sharp one
  gap.qubits = {{1, SignRule{}, 1.0}, {2, SignRule{}, 0.8}};
  CHECK_THROWS_AS(gap.validate(), std::invalid_argument);

  MeasurementPlan range;
  range.qubits = {{1, SignRule{}, 1.2}};
  CHECK_THROWS_AS(range.validate(), std::invalid_argument);

  CHECK_THROWS_AS(with_unsharpness(gate_spec("H").plan, 0.9, 5),
                  std::invalid_argument);
  CHECK_THROWS_AS(with_unsharpness(gate_spec("H").plan, -0.1, 1),
                  std::invalid_argument);
}

TEST_CASE("branch bras reject out-of-range words") {
  const MeasurementPlan plan = gate_spec("H").plan;
  CHECK_THROWS_AS(branch_bras(plan, 1u << 4, 0), std::invalid_argument);
  CHECK_THROWS_AS(branch_bras(plan, 0, 1), std::invalid_argument);  // sharp
  const MeasurementPlan unsharp = with_unsharpness(plan, 0.8, 1);
  CHECK_NOTHROW(branch_bras(unsharp, 0, 1));
  CHECK_THROWS_AS(branch_bras(unsharp, 0, 2), std::invalid_argument);
}

TEST_CASE("nearest-neighbour evolution builds exact cluster states") {
  for (const std::string gate : {"H", "CNOT"}) {
    const Geometry geom = gate_spec(gate).geometry;
    Vector psi = plus_state(geom.n);
    evolve_diagonal(psi, nn_couplings(geom), kPi);
    const StabilizerReport rep = check_cluster_stabilizers(psi, geom);
    REQUIRE(rep.expectation.size() == static_cast<std::size_t>(geom.n));
    CHECK(rep.all_pass());
  }
}

TEST_CASE("long-range tails break the stabilizers") {
  const Geometry geom = chain5_geometry();
  Vector psi = plus_state(geom.n);
  evolve_diagonal(psi, couplings(geom, 4.0), kPi);
  const StabilizerReport rep = check_cluster_stabilizers(psi, geom);
  CHECK_FALSE(rep.all_pass(1e-3));
}

TEST_CASE("projection guards reject mismatched plans") {
  const Geometry geom = chain5_geometry();
  const Vector psi = plus_state(geom.n);
  MeasurementPlan wrong;
  wrong.qubits = {{1, SignRule{}, 1.0}, {2, SignRule{}, 1.0}};
  CHECK_THROWS_AS(project_branch(geom, wrong, psi, 0, 0),
                  std::invalid_argument);
}
