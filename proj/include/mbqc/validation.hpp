#pragma once

// Runtime invariant suite behind the `validate` CLI subcommand: quick,
// deterministic checks of the structural properties every release must hold
// (channel CPTP-ness, optimizer hierarchy, unsharpness monotonicity,
// disorder recovery, stabilizer behavior, threshold report invariants).
// The unit-test suite covers the same ground more finely; this is the
// self-contained production smoke check.

#include "mbqc/channel_repr.hpp"
#include "mbqc/engine.hpp"
#include "mbqc/operator_basis.hpp"
#include "mbqc/sweep.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace mbqc {

struct ValidationCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

namespace detail {

inline void add_check(std::vector<ValidationCheck>& out, const std::string& name,
                      bool pass, const std::string& detail) {
  out.push_back({name, pass, detail});
}

}  // namespace detail

inline std::vector<ValidationCheck> run_validation() {
  std::vector<ValidationCheck> out;

  // Heisenberg-Weyl operator bases are orthogonal with norm d.
  for (int d : {2, 4}) {
    const OperatorBasis basis = operator_basis(d);
    double worst = 0.0;
    for (std::size_t i = 0; i < basis.ops.size(); ++i)
      for (std::size_t j = 0; j < basis.ops.size(); ++j) {
        const Complex g = (basis.ops[i].adjoint() * basis.ops[j]).trace();
        const double want = i == j ? static_cast<double>(d) : 0.0;
        worst = std::max(worst, std::abs(g - Complex(want, 0.0)));
      }
    detail::add_check(out, "operator-basis-orthogonality-d" + std::to_string(d),
                      worst <= tol::algebra,
                      "max |Tr(B_i^dag B_j) - d delta_ij| = " + format_double(worst));
  }

  // Assembled conditional channels are CPTP for sharp and unsharp
  // measurements, at generic alpha, for every preset gate.
  for (const std::string& gate : gate_names()) {
    double worst_completeness = 0.0;
    double worst_choi = 0.0;
    for (double alpha : {0.7, 2.5}) {
      const GateSpec spec = gate_spec(gate);
      const FrozenGateContext ctx = freeze_at_sharp(spec, alpha);
      for (double lambda : {1.0, 0.8}) {
        const int n = lambda < 1.0 ? std::min<int>(2, spec.plan.size()) : 0;
        const MeasurementPlan plan =
            n > 0 ? with_unsharpness(spec.plan, lambda, n) : spec.plan;
        const BranchSet set =
            conditional_branches(spec.geometry, ctx.couplings, plan, ctx.t);
        const ChannelRepr ch = assemble_channel(set, ctx.policy);
        const ChannelValidation v = validate_channel(ch);
        worst_completeness = std::max(worst_completeness, v.completeness_deviation);
        worst_choi = std::min(worst_choi, v.min_choi_eigenvalue);
        if (!v.ok()) break;
      }
    }
    detail::add_check(
        out, "channel-cptp-" + canonical_gate_name(gate),
        worst_completeness <= tol::algebra && worst_choi >= -tol::channel,
        "completeness deviation " + format_double(worst_completeness) +
            ", min Choi eigenvalue " + format_double(worst_choi));
  }

  // Branch completeness: the conditional maps of a plan resolve the
  // identity on the input space, before any correction is applied.
  {
    double worst = 0.0;
    for (const std::string& gate : gate_names()) {
      const GateSpec spec = gate_spec(gate);
      const CouplingMatrix cm = couplings(spec.geometry, 2.5);
      for (int unsharp : {0, 1}) {
        const MeasurementPlan plan =
            unsharp ? with_unsharpness(spec.plan, 0.8,
                                       std::min<int>(2, spec.plan.size()))
                    : spec.plan;
        const BranchSet set = conditional_branches(spec.geometry, cm, plan, kPi);
        Matrix acc = Matrix::Zero(set.d_in, set.d_in);
        for (const Branch& br : set.branches) acc += br.v.adjoint() * br.v;
        worst = std::max(worst, max_abs(acc - identity(set.d_in)));
      }
    }
    detail::add_check(out, "branch-completeness", worst <= tol::algebra,
                      "max |sum V^dag V - 1| = " + format_double(worst));
  }

  // Optimizer hierarchy: restricted <= affine <= per-outcome.
  {
    double worst = 0.0;
    for (const std::string& gate : {"H", "T", "CNOT"})
      for (double alpha : {0.3, 0.9, 1.5, 2.5}) {
        const GateSpec spec = gate_spec(gate);
        const CouplingMatrix cm = couplings(spec.geometry, alpha);
        const BranchSet set =
            conditional_branches(spec.geometry, cm, spec.plan, kPi);
        const ContributionTable table = build_contribution_table(set, spec.target);
        const double restricted = fidelity_from_table(table, spec.pmbqc);
        const double affine = optimize_affine(table).fidelity;
        const double per_outcome = optimize_per_outcome(table).fidelity;
        worst = std::max(worst, restricted - affine);
        worst = std::max(worst, affine - per_outcome);
      }
    detail::add_check(out, "optimizer-hierarchy", worst <= tol::algebra,
                      "max hierarchy violation = " + format_double(worst));
  }

  // Unsharpness deviation grows with the number of unsharp measurements and
  // shrinks as lambda -> 1.
  {
    const FrozenGateContext ctx = freeze_at_sharp(gate_spec("T"), 2.5);
    bool mono_n = true, mono_lambda = true;
    double prev = -1.0;
    for (int n = 1; n <= static_cast<int>(ctx.spec.plan.size()); ++n) {
      const double d = rf_delta(ctx, 0.8, n);
      if (d < prev - tol::channel) mono_n = false;
      prev = d;
    }
    prev = 1e9;
    for (double lambda : {0.75, 0.85, 0.95, 1.0}) {
      const double d = rf_delta(ctx, lambda, 2);
      if (d > prev + tol::channel) mono_lambda = false;
      prev = d;
    }
    detail::add_check(out, "unsharpness-monotonicity", mono_n && mono_lambda,
                      mono_n ? (mono_lambda ? "monotone in n and lambda"
                                            : "not monotone in lambda")
                             : "not monotone in n");
  }

  // sigma -> 0 recovers the ordered fidelity; Delta^n(lambda = 1) = 0.
  {
    const FrozenGateContext ctx = freeze_at_sharp(gate_spec("H"), 2.0);
    DisorderConfig dc;
    dc.sigma = 1e-12;
    dc.realizations = 16;
    const QuenchedResult q = quenched_fidelity(ctx, dc);
    const double gap = std::abs(q.mean - ctx.fid_sharp);
    const double sharp_delta = rf_delta(ctx, 1.0, 2);
    detail::add_check(out, "ordered-limit-recovery",
                      gap <= 1e-9 && std::abs(sharp_delta) <= tol::channel,
                      "|<F>_{sigma->0} - F| = " + format_double(gap) +
                          ", Delta(lambda=1) = " + format_double(sharp_delta));
  }

  // Monte Carlo standard error scales ~ 1/sqrt(R).
  {
    const FrozenGateContext ctx = freeze_at_sharp(gate_spec("T"), 4.4);
    DisorderConfig dc;
    dc.sigma = 0.05;
    dc.realizations = 250;
    const QuenchedResult q250 = quenched_fidelity(ctx, dc);
    dc.realizations = 1000;
    const QuenchedResult q1000 = quenched_fidelity(ctx, dc);
    const double ratio = q250.std_error / q1000.std_error;
    detail::add_check(out, "stderr-scaling", std::abs(ratio - 2.0) <= 0.4,
                      "SE(250)/SE(1000) = " + format_double(ratio));
  }

  // Nearest-neighbour states satisfy every cluster stabilizer; a power-law
  // weighted graph state at alpha = 4 violates at least one.
  {
    bool nn_ok = true;
    double wgs_worst = 0.0;
    for (const std::string& gate : {"H", "CNOT"}) {
      const GateSpec spec = gate_spec(gate);
      Vector psi = plus_state(spec.geometry.n);
      evolve_diagonal(psi, nn_couplings(spec.geometry), kPi);
      if (!check_cluster_stabilizers(psi, spec.geometry).all_pass(tol::algebra))
        nn_ok = false;
      Vector wgs = plus_state(spec.geometry.n);
      evolve_diagonal(wgs, couplings(spec.geometry, 4.0), kPi);
      const StabilizerReport rep = check_cluster_stabilizers(wgs, spec.geometry);
      for (double e : rep.expectation)
        wgs_worst = std::max(wgs_worst, std::abs(e - 1.0));
    }
    detail::add_check(out, "cluster-stabilizers", nn_ok && wgs_worst > 1e-3,
                      std::string(nn_ok ? "NN exact" : "NN violation") +
                          ", max WGS(alpha=4) deviation = " +
                          format_double(wgs_worst));
  }

  // Threshold reports respect their structural invariants on a coarse scan.
  {
    bool ok = true;
    std::string detail_msg = "alpha_max in [0,2), alpha_th <= alpha_s";
    for (const std::string& gate : gate_names()) {
      ThresholdOptions opt;
      opt.scan_step = 0.05;
      const ThresholdReport rep = compute_thresholds(gate, opt);
      if (!(rep.alpha_max >= 0.0 && rep.alpha_max < 2.0) || !rep.alpha_th ||
          !rep.alpha_s || *rep.alpha_th > *rep.alpha_s) {
        ok = false;
        detail_msg = "violated for " + rep.gate;
        break;
      }
    }
    detail::add_check(out, "threshold-invariants", ok, detail_msg);
  }

  return out;
}

}  // namespace mbqc
