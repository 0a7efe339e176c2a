#pragma once

// Robustness analyses: fidelity loss under unsharp measurements (with the
// correction policy frozen at the sharp optimum) and quenched averaging over
// Gaussian disorder in the coupling strengths.

#include "mbqc/fidelity.hpp"
#include "mbqc/gates.hpp"

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace mbqc {

/// Gate pattern pinned at one alpha with the correction policy optimized for
/// sharp measurements and ordered couplings; robustness quantities evaluate
/// degraded channels against this frozen policy.
struct FrozenGateContext {
  GateSpec spec;
  double alpha = 0.0;
  double t = kPi;
  CouplingMatrix couplings;
  CorrectionPolicy policy;   // affine optimum at lambda = 1
  double fid_sharp = 0.0;    // fidelity of the frozen policy at lambda = 1
};

inline FrozenGateContext freeze_at_sharp(const GateSpec& spec, double alpha,
                                         double t = kPi) {
  FrozenGateContext ctx{spec, alpha, t, couplings(spec.geometry, alpha),
                        CorrectionPolicy::fixed(0, {}), 0.0};
  BranchSet set = conditional_branches(spec.geometry, ctx.couplings, spec.plan, t);
  OptimizationResult best =
      optimize_affine(build_contribution_table(set, spec.target));
  ctx.policy = best.policy;
  ctx.fid_sharp = best.fidelity;
  return ctx;
}

/// Fidelity when the first n measured qubits are unsharp with sharpness
/// lambda, corrections kept at the sharp-case policy.
inline double unsharp_fidelity(const FrozenGateContext& ctx, double lambda,
                               int n) {
  MeasurementPlan plan = with_unsharpness(ctx.spec.plan, lambda, n);
  BranchSet set =
      conditional_branches(ctx.spec.geometry, ctx.couplings, plan, ctx.t);
  return fidelity_with_policy(set, ctx.policy, ctx.spec.target);
}

/// Robustness of fidelity, in percent:
///   [max(F(1), F_c) - max(F(lambda, n), F_c)] / max(F(1), F_c) * 100.
inline double rf_delta(const FrozenGateContext& ctx, double lambda, int n) {
  const int n_measured = ctx.spec.plan.size();
  if (n < 1 || n > n_measured)
    throw std::invalid_argument("rf_delta: n out of range");
  if (lambda < 0.0 || lambda > 1.0)
    throw std::invalid_argument("rf_delta: lambda out of range");
  const double fc = classical_threshold(ctx.spec.d);
  const double sharp = std::max(ctx.fid_sharp, fc);
  const double noisy = std::max(unsharp_fidelity(ctx, lambda, n), fc);
  return (sharp - noisy) / sharp * 100.0;
}

inline double rf_delta(const GateSpec& spec, double alpha, double lambda,
                       int n, double t = kPi) {
  return rf_delta(freeze_at_sharp(spec, alpha, t), lambda, n);
}

// ---------------------------------------------------------------------------
// Quenched disorder
// ---------------------------------------------------------------------------

enum class DisorderMode { PerBond, PerSite };

inline std::string to_string(DisorderMode m) {
  return m == DisorderMode::PerBond ? "per-bond" : "per-site";
}

inline DisorderMode disorder_mode_from_string(const std::string& s) {
  if (s == "per-bond") return DisorderMode::PerBond;
  if (s == "per-site") return DisorderMode::PerSite;
  throw std::invalid_argument("unknown disorder mode: " + s);
}

/// Gaussian disorder on the coupling strength J (mean kept at the ordered
/// value by default).  Negative samples are kept: at sigma <= 0.1 they are
/// ten-sigma events and truncation would bias the mean.
struct DisorderConfig {
  double mean = 1.0;
  double sigma = 0.0;
  int realizations = 1000;
  std::uint64_t seed = 0x5eed5eedULL;
  DisorderMode mode = DisorderMode::PerBond;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace detail

/// Couplings of one disorder realization.  Realizations are seeded
/// independently (counter-based), so realization r is reproducible no matter
/// in which order realizations are evaluated.  Draw order within a
/// realization is fixed: bonds lexicographic (k,l), k<l; sites ascending.
inline CouplingMatrix sample_disordered_couplings(const DisorderConfig& cfg,
                                                  const Geometry& geom,
                                                  double alpha,
                                                  int realization) {
  if (cfg.sigma < 0.0)
    throw std::invalid_argument("sample_disordered_couplings: sigma < 0");
  if (cfg.sigma == 0.0) {
    RealMatrix bond =
        RealMatrix::Constant(geom.n + 1, geom.n + 1, cfg.mean);
    return couplings_with_bonds(geom, alpha, bond);
  }
  std::mt19937_64 rng(detail::splitmix64(
      cfg.seed ^ detail::splitmix64(static_cast<std::uint64_t>(realization))));
  std::normal_distribution<double> gauss(cfg.mean, cfg.sigma);

  const int n = geom.n;
  RealMatrix bond_j = RealMatrix::Zero(n + 1, n + 1);
  if (cfg.mode == DisorderMode::PerBond) {
    for (int k = 1; k <= n; ++k)
      for (int l = k + 1; l <= n; ++l) {
        const double j = gauss(rng);
        bond_j(k, l) = j;
        bond_j(l, k) = j;
      }
  } else {
    std::vector<double> site(n + 1, 0.0);
    for (int k = 1; k <= n; ++k) site[k] = gauss(rng);
    for (int k = 1; k <= n; ++k)
      for (int l = k + 1; l <= n; ++l) {
        const double j = 0.5 * (site[k] + site[l]);
        bond_j(k, l) = j;
        bond_j(l, k) = j;
      }
  }
  return couplings_with_bonds(geom, alpha, bond_j);
}

struct QuenchedResult {
  double mean = 0.0;
  double std_error = 0.0;
  int realizations = 0;
  std::vector<double> samples;  // realization-indexed
};

namespace detail {

inline double kahan_sum(const std::vector<double>& xs) {
  double sum = 0.0, comp = 0.0;
  for (double x : xs) {
    const double y = x - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum;
}

}  // namespace detail

/// Monte Carlo quenched average of the gate fidelity over disorder
/// realizations, corrections frozen to the ordered-case policy.
/// Disorder-averaged fidelity of the frozen policy.  Optional (lambda,
/// n_unsharp) degrade the first n_unsharp measurements exactly as in
/// unsharp_fidelity; the defaults reproduce the sharp ordered-measurement
/// average bit-for-bit.
inline QuenchedResult quenched_fidelity(const FrozenGateContext& ctx,
                                        const DisorderConfig& cfg,
                                        double lambda = 1.0, int n_unsharp = 0) {
  if (cfg.realizations < 1)
    throw std::invalid_argument("quenched_fidelity: need at least 1 realization");
  const MeasurementPlan plan =
      n_unsharp > 0 ? with_unsharpness(ctx.spec.plan, lambda, n_unsharp)
                    : ctx.spec.plan;
  QuenchedResult result;
  result.realizations = cfg.realizations;
  result.samples.resize(cfg.realizations);
  for (int r = 0; r < cfg.realizations; ++r) {
    const CouplingMatrix cm =
        sample_disordered_couplings(cfg, ctx.spec.geometry, ctx.alpha, r);
    BranchSet set = conditional_branches(ctx.spec.geometry, cm, plan, ctx.t);
    result.samples[r] = fidelity_with_policy(set, ctx.policy, ctx.spec.target);
  }
  result.mean = detail::kahan_sum(result.samples) / cfg.realizations;
  if (cfg.realizations > 1) {
    std::vector<double> sq(result.samples.size());
    for (std::size_t i = 0; i < sq.size(); ++i) {
      const double d = result.samples[i] - result.mean;
      sq[i] = d * d;
    }
    const double var = detail::kahan_sum(sq) /
                       (static_cast<double>(cfg.realizations) *
                        (cfg.realizations - 1));
    result.std_error = std::sqrt(var);
  }
  return result;
}

/// Relative quenched error in percent:
///   [max(F, F_c) - max(<F>, F_c)] / F * 100
/// (bare F in the denominator, threshold-clamped numerator).
inline double relative_error(double ordered_fid, double quenched_mean, int d) {
  const double fc = classical_threshold(d);
  return (std::max(ordered_fid, fc) - std::max(quenched_mean, fc)) /
         ordered_fid * 100.0;
}

}  // namespace mbqc
