#ifndef SFLAB_OPERATORS_HPP
#define SFLAB_OPERATORS_HPP

#include "sflab/geometry.hpp"
#include "sflab/spectral.hpp"

#include <memory>

namespace sflab::operators {

/// Binds a target manifold to a discretized domain. `dealias` applies the 2/3
/// rule after every nonlinear product assembly. `hessian_sign` is a test
/// fixture: setting it to -1 injects a sign error into the Hessian
/// contractions of the lower-order operator assembly (mutation testing).
struct OperatorContext {
  std::shared_ptr<const geometry::TargetManifold> manifold;
  GridSpec grid;
  bool dealias = true;
  Real hessian_sign = 1.0;

  const geometry::TargetManifold& target() const { return *manifold; }
};

OperatorContext make_context(const std::string& target, const GridSpec& grid,
                             bool dealias = true);

struct Functionals {
  Real energy;          // E = 1/2 ||dv||_{L^2}^2
  Real tension_energy;  // G = 1/2 ||T(v)||_{L^2}^2
};

/// Throws OutsideTubularNeighborhood if any grid value leaves the tube.
void ensure_in_tube(const OperatorContext& ctx, const Field& v);

/// T(v) = Lap v - Pi_ab(v) dv^a dv^b (trace over the spatial index); for
/// on-manifold v this is the tangential part of the Laplacian.
Field tension_ambient(const OperatorContext& ctx, const Field& v);

/// f_v = J_{Pi(v)}(dPi|_v(Lap v)), the ambient Schroedinger vector field.
Field schrodinger_term(const OperatorContext& ctx, const Field& v);

/// Euler-Lagrange operator of G(v) = 1/2 int |T(v)|^2 under unconstrained
/// variations, split as F(v) = Lap^2 v - F_lower(v).
Field el_operator(const OperatorContext& ctx, const Field& v);
Field el_lower_order(const OperatorContext& ctx, const Field& v);

/// H(v) = Lap(Pi_ab dv dv) + div(Pi_ab Lap v dv) + Pi_ab d(Lap v) dv
///        - d_rho(v)(F_lower(v)); equals d_rho(v)(F(v)) on the manifold.
Field normal_correction(const OperatorContext& ctx, const Field& v);

/// Right-hand side of the regularized ambient flow:
/// -eps (F(v) - H(v)) + f_v + beta T(v).
Field rhs_regularized(const OperatorContext& ctx, const Field& v, Real eps,
                      Real beta);

/// N(v) = rhs_regularized(v) + eps Lap^2 v; derivatives of order <= 3 only.
Field nonlinear_n(const OperatorContext& ctx, const Field& v, Real eps,
                  Real beta);

Functionals functionals(const OperatorContext& ctx, const Field& v);

/// rho(v) as a field, plus the scalar monitors used by diagnostics.
Field rho_field(const OperatorContext& ctx, const Field& v);
Real sup_rho(const OperatorContext& ctx, const Field& v);
Real l2_rho(const OperatorContext& ctx, const Field& v);

/// Pointwise application of dPi|_v (resp. d_rho|_v) to another field.
Field tangential_part(const OperatorContext& ctx, const Field& v,
                      const Field& X);
Field normal_part(const OperatorContext& ctx, const Field& v, const Field& X);

/// Right-hand side of the energy evolution identity:
/// 1/2 dE/dt = -eps ||grad tau||^2 - beta ||tau||^2
///             - eps int <R(du, tau) du, tau>.
Real energy_identity_rate(const OperatorContext& ctx, const Field& v, Real eps,
                          Real beta);

}  // namespace sflab::operators

#endif  // SFLAB_OPERATORS_HPP
