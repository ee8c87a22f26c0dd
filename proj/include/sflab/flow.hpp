#ifndef SFLAB_FLOW_HPP
#define SFLAB_FLOW_HPP

#include "sflab/operators.hpp"

#include <cstdint>
#include <vector>

namespace sflab::flow {

using operators::OperatorContext;

struct FlowParams {
  Real eps = 1e-3;
  Real beta = 0.0;
  Real dt = 1e-4;      // step size; with auto_dt it acts as a cap
  bool auto_dt = false;
  Real picard_tol = 1e-10;  // L^2 difference between successive iterates
  int picard_max = 50;
  Real t_end = 1.0;
  int record_every = 1;   // diagnostics cadence, in steps
  int snapshot_every = 0;  // state snapshots cadence; 0 keeps first/last only
  std::vector<Real> sobolev_orders = {6.0};
  bool project_each_step = false;   // optional renormalization, off by default
  bool allow_off_manifold = false;
  bool allow_eps_zero_duhamel = false;  // unsafe: explicit stepping of N
  bool zero_nonlinearity = false;       // test hook: N == 0
  Real blowup_factor = 1e3;
  std::uint64_t seed = 0;  // tube-check sampling
};

struct DiagnosticsRecord {
  Real t = 0;
  Real energy = 0;
  Real tension_energy = 0;
  std::vector<Real> grad_sobolev;  // ||dv||_{H^s} per configured s
  Real sup_rho = 0;
  Real l2_rho = 0;
  Real energy_residual = 0;  // relative residual of the energy identity
  int picard_iters = 0;
  std::int64_t wall_ns = 0;
};

struct Trajectory {
  std::vector<Real> times;           // every accepted step
  std::vector<Real> snapshot_times;
  std::vector<Field> snapshots;
  std::vector<DiagnosticsRecord> diagnostics;
  Field final_state;
  Real final_time = 0;
};

struct StepStats {
  int iterations = 0;
  std::vector<Real> diffs;  // successive Picard L^2 differences
};

/// One exact-semigroup + Duhamel fixed-point step of length p.dt. The time
/// integral uses the exponential trapezoid rule (N at the step start
/// propagated by the semigroup, N at the iterate's endpoint), iterated until
/// the successive L^2 difference drops below picard_tol.
Field duhamel_step(const OperatorContext& ctx, const Field& v,
                   const FlowParams& p, StepStats* stats = nullptr);

/// Contraction-ball step-size heuristic:
/// dt = c min(eps^3 (1+X)^(-12), eps^(-1) (1+X)^(-4)), X = ||dv0||_{H^s},
/// with c calibrated on the reference helical scenario (M=256, L=2pi,
/// theta=pi/3, k=2, eps=1e-3); capped by p.dt.
Real step_size_heuristic(const Field& v0, const FlowParams& p);

/// March the regularized flow to t_end. Picard divergence triggers substep
/// halving (the outer step grid is preserved); blow-up of the leading
/// Sobolev norm beyond blowup_factor x initial throws BlowupDetected.
Trajectory integrate(const OperatorContext& ctx, const Field& v0,
                     const FlowParams& p);

/// eps = 0 reference integrator for S^2: implicit midpoint with pointwise
/// projection for dt s = s x Lap s + beta tau(s). Newton-GMRES inner solver.
Trajectory baseline_ll_midpoint(const OperatorContext& ctx, const Field& v0,
                                const FlowParams& p);

struct ContinuationResult {
  std::vector<Real> eps_list;
  std::vector<Trajectory> runs;
  std::vector<Real> sample_times;
  // consecutive-pair distances ||v_{eps_i} - v_{eps_{i+1}}|| at sample times
  std::vector<std::vector<Real>> l2_dist;
  std::vector<std::vector<Real>> hs_dist;
  Real s_prime = 0;
};

/// Runs integrate for each eps (strictly decreasing, positive) on a common
/// sample-time grid and tabulates consecutive-pair distances in L^2 and
/// H^{s'} (s' = leading sobolev order - 1).
ContinuationResult epsilon_continuation(const OperatorContext& ctx,
                                        const Field& v0,
                                        const std::vector<Real>& eps_list,
                                        const FlowParams& p,
                                        int n_samples = 8);

/// The energy-estimate horizon T0 = min(1, E0^-(2n+s+8)) / (8 (2n+s+8)) with
/// E0 = ||dv0||_{H^s}^2 and the absolute constant pinned to 1.
Real energy_horizon(const Field& v0, Real s);

}  // namespace sflab::flow

#endif  // SFLAB_FLOW_HPP
