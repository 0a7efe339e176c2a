// Gate catalogue: target unitaries, name aliases, coupling conventions per
// distance mode, and the closed-form restricted fidelities against the
// numeric channel.

#include <catch2/catch_amalgamated.hpp>

#include "mbqc/mbqc.hpp"

#include <cmath>

using namespace mbqc;

namespace {

double numeric_restricted(const GateSpec& spec, double alpha) {
  const CouplingMatrix cm = couplings(spec.geometry, alpha);
  const BranchSet set = conditional_branches(spec.geometry, cm, spec.plan, kPi);
  return fidelity_with_policy(set, spec.pmbqc, spec.target);
}

}  // namespace

TEST_CASE("gate name aliases") {
  CHECK(canonical_gate_name("hadamard") == "H");
  CHECK(canonical_gate_name("h") == "H");
  CHECK(canonical_gate_name("S") == "Rz(pi/2)");
  CHECK(canonical_gate_name("rz") == "Rz(pi/2)");
  CHECK(canonical_gate_name("t") == "T");
  CHECK(canonical_gate_name("cx") == "CNOT");
  CHECK_THROWS_AS(canonical_gate_name("toffoli"), std::invalid_argument);
  CHECK(gate_names() ==
        std::vector<std::string>{"H", "Rz(pi/2)", "T", "CNOT"});
}

TEST_CASE("target unitaries") {
  const Matrix h = gate_spec("H").target;
  Matrix h_ref(2, 2);
  h_ref << 1, 1, 1, -1;
  CHECK(max_abs(h - h_ref / std::sqrt(2.0)) <= tol::algebra);

  Matrix s_ref(2, 2);
  s_ref << 1.0, 0.0, 0.0, std::exp(kI * (kPi / 2));
  CHECK(equal_up_to_phase(gate_spec("Rz(pi/2)").target, s_ref));

  Matrix t_ref(2, 2);
  t_ref << 1.0, 0.0, 0.0, std::exp(kI * (kPi / 4));
  CHECK(equal_up_to_phase(gate_spec("T").target, t_ref));

  const Matrix cx = gate_spec("CNOT").target;
  CHECK(is_unitary(cx));
  // Input (target, control) = (high bit, low bit): control set flips target.
  CHECK(cx(0, 0) == Complex(1.0, 0.0));  // |00> -> |00>
  CHECK(cx(3, 1) == Complex(1.0, 0.0));  // |01> -> |11>
  CHECK(cx(2, 2) == Complex(1.0, 0.0));  // |10> -> |10>
  CHECK(cx(1, 3) == Complex(1.0, 0.0));  // |11> -> |01>

  for (const auto& name : gate_names()) CHECK(is_unitary(gate_spec(name).target));
}

TEST_CASE("geometry presets") {
  const Geometry chain = chain5_geometry();
  CHECK(chain.n == 5);
  CHECK(chain.inputs == std::vector<int>{1});
  CHECK(chain.outputs == std::vector<int>{5});
  CHECK(chain.measured() == std::vector<int>{1, 2, 3, 4});

  const Geometry cross = cnot_geometry();
  CHECK(cross.n == 4);
  CHECK(cross.inputs == std::vector<int>{1, 4});
  CHECK(cross.outputs == std::vector<int>{3, 4});
  CHECK(cross.measured() == std::vector<int>{1, 2});
  CHECK(cross.mode == kCnotDefaultDistanceMode);
  CHECK(cross.neighbours(2) == std::vector<int>{1, 3, 4});
}

TEST_CASE("power-law couplings per distance convention") {
  const double alpha = 1.7;
  const Geometry chain = chain5_geometry();
  const CouplingMatrix c = couplings(chain, alpha);
  CHECK(c(1, 2) == Catch::Approx(1.0));
  CHECK(c(1, 3) == Catch::Approx(std::pow(2.0, -alpha)));
  CHECK(c(1, 5) == Catch::Approx(std::pow(4.0, -alpha)));
  CHECK(c(3, 1) == c(1, 3));

  // On a chain every convention gives the same distances.
  for (DistanceMode m : {DistanceMode::Graph, DistanceMode::Euclidean}) {
    const CouplingMatrix cm = couplings(chain5_geometry(m), alpha);
    for (int k = 1; k <= 5; ++k)
      for (int l = k + 1; l <= 5; ++l)
        CHECK(cm(k, l) == Catch::Approx(c(k, l)));
  }

  // The tee layout differs: qubit 4 sits above the chain midpoint.
  const CouplingMatrix eu = couplings(cnot_geometry(DistanceMode::Euclidean), alpha);
  CHECK(eu(2, 4) == Catch::Approx(1.0));
  CHECK(eu(1, 4) == Catch::Approx(std::pow(std::sqrt(2.0), -alpha)));
  CHECK(eu(3, 4) == Catch::Approx(std::pow(std::sqrt(2.0), -alpha)));
  CHECK(eu(1, 3) == Catch::Approx(std::pow(2.0, -alpha)));

  const CouplingMatrix gr = couplings(cnot_geometry(DistanceMode::Graph), alpha);
  CHECK(gr(1, 4) == Catch::Approx(std::pow(2.0, -alpha)));
  CHECK(gr(3, 4) == Catch::Approx(std::pow(2.0, -alpha)));

  const CouplingMatrix lc = couplings(cnot_geometry(DistanceMode::LabelChain), alpha);
  CHECK(lc(1, 4) == Catch::Approx(std::pow(3.0, -alpha)));

  CHECK_THROWS_AS(couplings(chain, -0.5), std::invalid_argument);
}

TEST_CASE("nearest-neighbour couplings cover exactly the edge set") {
  const Geometry cross = cnot_geometry();
  const CouplingMatrix nn = nn_couplings(cross);
  CHECK(nn(1, 2) == 1.0);
  CHECK(nn(2, 3) == 1.0);
  CHECK(nn(2, 4) == 1.0);
  CHECK(nn(1, 3) == 0.0);
  CHECK(nn(1, 4) == 0.0);
  CHECK(nn(3, 4) == 0.0);
}

TEST_CASE("distance mode override") {
  CHECK(gate_spec("H", DistanceMode::Graph).geometry.mode ==
        DistanceMode::Graph);
  CHECK(gate_spec("CNOT", DistanceMode::LabelChain).geometry.mode ==
        DistanceMode::LabelChain);
  CHECK(gate_spec("CNOT").geometry.mode == DistanceMode::Euclidean);
}

TEST_CASE("closed-form restricted fidelity matches the channel") {
  for (const std::string gate : {"H", "Rz(pi/2)", "T"}) {
    const GateSpec spec = gate_spec(gate);
    REQUIRE(spec.has_closed_form);
    for (int i = 0; i < 50; ++i) {
      const double alpha = 8.0 * i / 49.0;
      const double closed = analytic_restricted_fidelity(gate, alpha);
      const double numeric = numeric_restricted(spec, alpha);
      INFO(gate << " at alpha " << alpha);
      CHECK(std::abs(closed - numeric) <= 1e-10);
    }
  }
  CHECK(analytic_restricted_fidelity("H", 0.0) ==
        Catch::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(analytic_restricted_fidelity("H", 0.56) ==
        Catch::Approx(0.48471574446629284).margin(1e-12));
  CHECK_THROWS_AS(analytic_restricted_fidelity("CNOT", 1.0),
                  std::invalid_argument);
  CHECK_FALSE(gate_spec("CNOT").has_closed_form);
}

TEST_CASE("rotation plan encodes the generic pattern") {
  const GateSpec t = gate_spec("T");
  REQUIRE(t.plan.size() == 4);
  CHECK(t.plan.qubits[0].rule.base == 0.0);
  CHECK(t.plan.qubits[1].rule.base == 0.0);
  CHECK(t.plan.qubits[2].rule.base == Catch::Approx(-kPi / 4));
  CHECK(t.plan.qubits[3].rule.base == 0.0);
  for (const auto& q : t.plan.qubits) CHECK(q.lambda == 1.0);
}
