#ifndef SFLAB_GEOMETRY_HPP
#define SFLAB_GEOMETRY_HPP

#include "sflab/types.hpp"

#include <array>
#include <memory>
#include <string>

namespace sflab::geometry {

/// A tangent vector attached to an ambient base point.
struct TangentVector {
  AmbientVec base;
  AmbientVec vec;
};

/// Compact embedded Kaehler target N in R^p, described through the nearest
/// point projection Pi of its tubular neighborhood, the derivatives of Pi,
/// and the complex structure J. All maps are pure and safe to call from any
/// number of workers.
class TargetManifold {
 public:
  virtual ~TargetManifold() = default;

  virtual int ambient_dim() const = 0;
  virtual Real tubular_radius() const = 0;
  virtual std::string name() const = 0;

  /// Nearest point projection. Throws OutsideTubularNeighborhood when
  /// dist(Q, N) >= tubular_radius().
  virtual AmbientVec project(const AmbientVec& Q) const = 0;

  /// rho(Q) = Q - Pi(Q); |rho(Q)| = dist(Q, N).
  AmbientVec rho(const AmbientVec& Q) const { return Q - project(Q); }
  Real dist_to_manifold(const AmbientVec& Q) const { return rho(Q).norm(); }
  bool in_tube(const AmbientVec& Q) const {
    return dist_to_manifold(Q) < tubular_radius();
  }

  /// Differential of Pi at Q as a p x p matrix; at on-manifold points this is
  /// the orthogonal projector onto the tangent space.
  virtual AmbientMat d_pi(const AmbientVec& Q) const = 0;
  /// Differential of rho, in closed form (d_pi + d_rho = Id).
  virtual AmbientMat d_rho(const AmbientVec& Q) const = 0;

  /// Hessian of Pi contracted with two directions: component c is
  /// Pi^c_{ab}(Q) X^a Y^b. On the manifold with tangent X this is minus the
  /// second fundamental form.
  virtual AmbientVec hess_pi(const AmbientVec& Q, const AmbientVec& X,
                             const AmbientVec& Y) const = 0;

  /// Third derivatives as a directional form: component e is
  /// Pi^e_{abc}(Q) X^a Y^b Z^c.
  virtual AmbientVec third_pi(const AmbientVec& Q, const AmbientVec& X,
                              const AmbientVec& Y,
                              const AmbientVec& Z) const = 0;

  /// Contraction of the output slot with W: component c is
  /// W_e Pi^e_{abc}(Q) X^a Y^b.
  virtual AmbientVec third_pi_contract(const AmbientVec& Q,
                                       const AmbientVec& X,
                                       const AmbientVec& Y,
                                       const AmbientVec& W) const = 0;

  /// Complex structure at an on-manifold point q applied to a tangent X.
  virtual AmbientVec j_apply(const AmbientVec& q, const AmbientVec& X) const = 0;

  /// <R(X,Y)X, Y> at on-manifold q, for ambient representatives of tangent
  /// vectors (curvature convention makes this = <X,Y>^2 - |X|^2 |Y|^2 on S^2).
  virtual Real curvature_pair(const AmbientVec& q, const AmbientVec& X,
                              const AmbientVec& Y) const = 0;

  /// Checked variant: verifies the tangency invariant of X before applying J.
  TangentVector j_apply_checked(const TangentVector& X) const;
};

/// Unit sphere S^2 in R^3 with Pi(Q) = Q/|Q| and J(s)X = s x X. The opposite
/// orientation of J generates the time-reversed flow.
class Sphere final : public TargetManifold {
 public:
  int ambient_dim() const override { return 3; }
  Real tubular_radius() const override { return 0.5; }
  std::string name() const override { return "s2"; }

  AmbientVec project(const AmbientVec& Q) const override;
  AmbientMat d_pi(const AmbientVec& Q) const override;
  AmbientMat d_rho(const AmbientVec& Q) const override;
  AmbientVec hess_pi(const AmbientVec& Q, const AmbientVec& X,
                     const AmbientVec& Y) const override;
  AmbientVec third_pi(const AmbientVec& Q, const AmbientVec& X,
                      const AmbientVec& Y, const AmbientVec& Z) const override;
  AmbientVec third_pi_contract(const AmbientVec& Q, const AmbientVec& X,
                               const AmbientVec& Y,
                               const AmbientVec& W) const override;
  AmbientVec j_apply(const AmbientVec& q, const AmbientVec& X) const override;
  Real curvature_pair(const AmbientVec& q, const AmbientVec& X,
                      const AmbientVec& Y) const override;
};

/// Flat torus T^2 = S^1 x S^1 in R^4. Kaehler with R == 0, so curvature terms
/// drop out; useful for isolating curvature-term bugs.
class FlatTorus final : public TargetManifold {
 public:
  int ambient_dim() const override { return 4; }
  Real tubular_radius() const override { return 0.5; }
  std::string name() const override { return "torus"; }

  AmbientVec project(const AmbientVec& Q) const override;
  AmbientMat d_pi(const AmbientVec& Q) const override;
  AmbientMat d_rho(const AmbientVec& Q) const override;
  AmbientVec hess_pi(const AmbientVec& Q, const AmbientVec& X,
                     const AmbientVec& Y) const override;
  AmbientVec third_pi(const AmbientVec& Q, const AmbientVec& X,
                      const AmbientVec& Y, const AmbientVec& Z) const override;
  AmbientVec third_pi_contract(const AmbientVec& Q, const AmbientVec& X,
                               const AmbientVec& Y,
                               const AmbientVec& W) const override;
  AmbientVec j_apply(const AmbientVec& q, const AmbientVec& X) const override;
  Real curvature_pair(const AmbientVec&, const AmbientVec&,
                      const AmbientVec&) const override {
    return 0.0;
  }
};

const Sphere& sphere();
const FlatTorus& flat_torus();
std::shared_ptr<const TargetManifold> make_target(const std::string& name);

// ---------------------------------------------------------------------------
// Chart-side S^2 machinery (cross-checks only; the flow evolves ambient
// fields). Coordinates (theta, phi) with metric dtheta^2 + sin^2(theta) dphi^2.

inline constexpr Real kChartMargin = 1e-3;  // radians away from the poles

struct ChartPoint {
  Real theta;
  Real phi;
};

/// Christoffel symbols Gamma[i][j][k] = Gamma^i_{jk}, indices 0 = theta,
/// 1 = phi. Throws PoleProximity within kChartMargin of a pole.
std::array<std::array<std::array<Real, 2>, 2>, 2> christoffel_s2(
    const ChartPoint& c);

Eigen::Vector3d chart_embed(const ChartPoint& c);
/// Coordinate frame dw(d_theta), dw(d_phi) of the embedding at c.
void chart_frame(const ChartPoint& c, Eigen::Vector3d& e_theta,
                 Eigen::Vector3d& e_phi);

inline constexpr Real kOnManifoldTol = 1e-12;
inline constexpr Real kTangentTol = 1e-10;

}  // namespace sflab::geometry

#endif  // SFLAB_GEOMETRY_HPP
