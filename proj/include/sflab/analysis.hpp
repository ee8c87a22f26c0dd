#ifndef SFLAB_ANALYSIS_HPP
#define SFLAB_ANALYSIS_HPP

#include "sflab/flow.hpp"

namespace sflab::analysis {

/// Exponent tuple for the interpolation inequality
/// ||d^j f||_p <= C ||d^k f||_q^a ||f||_r^(1-a); the exponents must satisfy
/// 1/p = j/n + 1/r + a (1/q - 1/r - k/n).
struct GNExponents {
  int n = 1;
  int j = 0;
  int k = 1;
  Real p = 2, q = 2, r = 2;
  Real a = 0.5;

  Real relation_residual() const;
  bool valid() const { return std::abs(relation_residual()) <= 1e-12; }
  /// The stated failure case: a = 1 with r = n/(k-1) != 1.
  bool excluded_case() const;
};

/// ||d^j f||_p / (||d^k f||_q^a ||f||_r^(1-a)) for a scalar field.
/// Throws DegenerateDenominator when a denominator norm is below 1e-14.
Real gn_ratio(const Field& f, const GNExponents& e);

/// max over axes of the mixed j-th derivative magnitude is ambiguous in more
/// than one dimension; the ratio uses the full j-th derivative tensor
/// magnitude sqrt(sum over all multi-indices).
Field nth_derivative_magnitude(const Field& f, int order);

struct NormEquivalenceReport {
  Real max_violation_first_order;   // | |du|^2 - |dv|^2 | pointwise max
  Real max_violation_second_order;  // positive part of |D^2 u|^2-2|d^2v|^2-C|dv|^4
  Real constant_second_order;       // the C used (S^2: 2)
};

/// Chart field u = (theta, phi) on the grid; verifies the pointwise
/// intrinsic/ambient norm relations through order min(k,2).
NormEquivalenceReport norm_equivalence_check(const Field& chart_u, int k);

/// Chart tension of (1.1)-type for the S^2 metric pushed to ambient R^3.
Field chart_tension_pushforward(const Field& chart_u);
/// Chart energy density g_ij du^i du^j (pointwise scalar field).
Field chart_energy_density(const Field& chart_u);
Field chart_to_ambient(const Field& chart_u);

/// Closed-form parallel transport on S^2 along the minimal geodesic:
/// V - (V . p2) / (1 + p1 . p2) (p1 + p2). Throws AntipodalPoints.
AmbientVec parallel_transport_s2(const AmbientVec& pt1, const AmbientVec& pt2,
                                 const AmbientVec& V);

struct SolutionDistance {
  Real transport_term = 0;  // sum_alpha ||W_alpha - Vt_alpha||_{L^2}^2
  Real position_term = 0;   // ||u1 - u2||_{L^2}^2
  Real total = 0;
};

/// Parallel-transport solution metric between two on-sphere fields.
SolutionDistance solution_distance(const Field& u1, const Field& u2);

struct GronwallReport {
  Real fitted_c = 0;        // slope of ln(distance) over the fit window
  Real fit_residual = 0;    // rms ln-residual / |ln decade of the window|
  std::vector<Real> times;
  std::vector<Real> distances;  // total solution distance per sample
  bool pointwise_bound_holds = false;  // d(t) <= e^{Ct} d(0) (1 + 1e-6)
};

/// Twin-flow continuous-dependence experiment: evolve both initial states
/// with identical FlowParams, sample the solution distance, and fit
/// ln(distance) against t on the second half of the window.
GronwallReport gronwall_experiment(const OperatorContext& ctx, const Field& u1_0,
                                   const Field& u2_0, const flow::FlowParams& p,
                                   int n_samples = 16);

struct InterpolationReport {
  Real max_ratio = 0;  // max over samples of lhs / rhs (<= 1 within roundoff)
  int samples = 0;
};

/// Verifies ||dd||_{H^{s'}} <= ||dd||_{H^s}^{s'/s} ||dd||_{L^2}^{1-s'/s} for
/// dd = d(v1 - v2) at each common sample of the two trajectories (exact with
/// constant 1 for the spectral norms).
InterpolationReport interpolation_dependence(const flow::Trajectory& t1,
                                             const flow::Trajectory& t2, Real s,
                                             Real s_prime);

}  // namespace sflab::analysis

#endif  // SFLAB_ANALYSIS_HPP
