#ifndef SFLAB_ORACLE_HPP
#define SFLAB_ORACLE_HPP

#include "sflab/field.hpp"
#include "sflab/geometry.hpp"

#include <functional>

// Independent reference implementations used to validate the closed-form
// kernels. Everything here works by direct summation, dense finite
// differences, or ODE integration; none of it goes through the spectral
// module, so a shared bug cannot hide.
namespace sflab::oracle {

struct OracleConfig {
  Real fd_step = 1e-5;       // relative step, clamped to [1e-8, 1e-3]
  int richardson_levels = 3;
  Real ode_tol = 1e-10;
};

/// Central-difference Gateaux derivative d/ds F(v + s phi)|_0 with Richardson
/// extrapolation over richardson_levels halvings. When tube_ok is supplied it
/// is checked at the extreme evaluation points; failure throws TubeExit.
Real fd_gateaux(const std::function<Real(const Field&)>& functional,
                const Field& v, const Field& phi, const OracleConfig& cfg = {},
                const std::function<bool(const Field&)>& tube_ok = nullptr);

/// Exact traveling solution of dt s = s x Lap s on S^2:
/// s = (sin t cos(kx - w t), sin t sin(kx - w t), cos t), w = k^2 cos(theta).
Eigen::Vector3d exact_helical(Real theta, int k, Real t, Real x);
Real helical_omega(Real theta, int k);

/// Sharp multiplier constant C_i = sup_{y>=0} y^i e^{-y^4}, by golden-section
/// search to 1e-12.
Real smoothing_constant(int i);

/// Parallel transport of V from pt1 to pt2 along the connecting great circle,
/// by RK4 integration of the transport equation.
AmbientVec transport_ode(const AmbientVec& pt1, const AmbientVec& pt2,
                         const AmbientVec& V, const OracleConfig& cfg = {});

/// Brute-force nearest point on S^2 via two-stage mesh refinement.
Eigen::Vector3d sphere_nearest_bruteforce(const Eigen::Vector3d& Q,
                                          int mesh = 512);

// Dense finite-difference derivatives of the projection map.
AmbientMat fd_d_pi(const geometry::TargetManifold& m, const AmbientVec& Q,
                   Real h = 1e-5);
AmbientVec fd_hess_pi(const geometry::TargetManifold& m, const AmbientVec& Q,
                      const AmbientVec& X, const AmbientVec& Y, Real h = 1e-4);
AmbientVec fd_third_pi(const geometry::TargetManifold& m, const AmbientVec& Q,
                       const AmbientVec& X, const AmbientVec& Y,
                       const AmbientVec& Z, Real h = 1e-3);

/// Christoffel symbols of dtheta^2 + sin^2 theta dphi^2 from finite
/// differences of the metric components.
std::array<std::array<std::array<Real, 2>, 2>, 2> christoffel_s2_fd(
    Real theta, Real h = 1e-6);

// Direct-summation spectral references (O(M^2) per line; test sizes only).
Eigen::ArrayXcd dft_direct(const Eigen::ArrayXd& line);
Real sobolev_norm_direct(const Field& f, Real s);
Field fractional_direct(const Field& f, Real s);

/// Classical RK4 reference step for dv/dt = rhs(v), subdivided `substeps`
/// times. High-order one-step oracle for the Duhamel stepper.
Field rk4_step(const std::function<Field(const Field&)>& rhs, const Field& v,
               Real dt, int substeps = 1);

}  // namespace sflab::oracle

#endif  // SFLAB_ORACLE_HPP
