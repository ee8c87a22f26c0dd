#include "sflab/geometry.hpp"

#include <cmath>

namespace sflab::geometry {

namespace {

// Sphere kernels in arbitrary dimension d operate on d-vectors; the flat
// torus reuses them blockwise with d = 2.

template <int D>
using Vec = Eigen::Matrix<Real, D, 1>;

template <int D>
Vec<D> sphere_project(const Vec<D>& Q, Real delta) {
  const Real r = Q.norm();
  if (std::abs(r - 1.0) >= delta)
    throw OutsideTubularNeighborhood("point at distance " +
                                     std::to_string(std::abs(r - 1.0)) +
                                     " from the unit sphere");
  return Q / r;
}

template <int D>
Eigen::Matrix<Real, D, D> sphere_d_pi(const Vec<D>& Q) {
  const Real r = Q.norm();
  const Vec<D> n = Q / r;
  return (Eigen::Matrix<Real, D, D>::Identity() - n * n.transpose()) / r;
}

template <int D>
Eigen::Matrix<Real, D, D> sphere_d_rho(const Vec<D>& Q) {
  const Real r = Q.norm();
  const Vec<D> n = Q / r;
  return (1.0 - 1.0 / r) * Eigen::Matrix<Real, D, D>::Identity() +
         n * n.transpose() / r;
}

template <int D>
Vec<D> sphere_hess(const Vec<D>& Q, const Vec<D>& X, const Vec<D>& Y) {
  const Real r2 = Q.squaredNorm();
  const Real r = std::sqrt(r2);
  const Real r3 = r * r2, r5 = r3 * r2;
  const Real qx = Q.dot(X), qy = Q.dot(Y), xy = X.dot(Y);
  return (-1.0 / r3) * (X * qy + Y * qx + Q * xy) + (3.0 * qx * qy / r5) * Q;
}

template <int D>
Vec<D> sphere_third(const Vec<D>& Q, const Vec<D>& X, const Vec<D>& Y,
                    const Vec<D>& Z) {
  const Real r2 = Q.squaredNorm();
  const Real r = std::sqrt(r2);
  const Real r3 = r * r2, r5 = r3 * r2, r7 = r5 * r2;
  const Real qx = Q.dot(X), qy = Q.dot(Y), qz = Q.dot(Z);
  const Real xy = X.dot(Y), xz = X.dot(Z), yz = Y.dot(Z);
  Vec<D> out = (-1.0 / r3) * (X * yz + Y * xz + Z * xy);
  out += (3.0 / r5) * (qz * (X * qy + Y * qx + Q * xy) + Z * qx * qy +
                       Q * (xz * qy + qx * yz));
  out += (-15.0 * qx * qy * qz / r7) * Q;
  return out;
}

// Output slot contracted with W: component c is W_e d^3 Pi^e[X, Y, e_c].
template <int D>
Vec<D> sphere_third_contract(const Vec<D>& Q, const Vec<D>& X, const Vec<D>& Y,
                             const Vec<D>& W) {
  const Real r2 = Q.squaredNorm();
  const Real r = std::sqrt(r2);
  const Real r3 = r * r2, r5 = r3 * r2, r7 = r5 * r2;
  const Real qx = Q.dot(X), qy = Q.dot(Y), qw = Q.dot(W);
  const Real xy = X.dot(Y), wx = W.dot(X), wy = W.dot(Y);
  Vec<D> out = (-1.0 / r3) * (Y * wx + X * wy + W * xy);
  out += (3.0 / r5) * (Q * (wx * qy + wy * qx + qw * xy) + W * qx * qy +
                       X * qw * qy + Y * qw * qx);
  out += (-15.0 * qw * qx * qy / r7) * Q;
  return out;
}

}  // namespace

TangentVector TargetManifold::j_apply_checked(const TangentVector& X) const {
  const AmbientVec q = project(X.base);
  const AmbientVec normal_part = d_rho(q) * X.vec;
  const Real scale = std::max(X.vec.norm(), Real(1));
  if (normal_part.norm() > kTangentTol * scale)
    throw NotTangent("vector has normal component " +
                     std::to_string(normal_part.norm()));
  return {q, j_apply(q, X.vec)};
}

// ---------------------------------------------------------------------- S^2

AmbientVec Sphere::project(const AmbientVec& Q) const {
  return sphere_project<3>(Q.head<3>(), tubular_radius());
}

AmbientMat Sphere::d_pi(const AmbientVec& Q) const {
  return sphere_d_pi<3>(Q.head<3>());
}

AmbientMat Sphere::d_rho(const AmbientVec& Q) const {
  return sphere_d_rho<3>(Q.head<3>());
}

AmbientVec Sphere::hess_pi(const AmbientVec& Q, const AmbientVec& X,
                           const AmbientVec& Y) const {
  return sphere_hess<3>(Q.head<3>(), X.head<3>(), Y.head<3>());
}

AmbientVec Sphere::third_pi(const AmbientVec& Q, const AmbientVec& X,
                            const AmbientVec& Y, const AmbientVec& Z) const {
  return sphere_third<3>(Q.head<3>(), X.head<3>(), Y.head<3>(), Z.head<3>());
}

AmbientVec Sphere::third_pi_contract(const AmbientVec& Q, const AmbientVec& X,
                                     const AmbientVec& Y,
                                     const AmbientVec& W) const {
  return sphere_third_contract<3>(Q.head<3>(), X.head<3>(), Y.head<3>(),
                                  W.head<3>());
}

AmbientVec Sphere::j_apply(const AmbientVec& q, const AmbientVec& X) const {
  Eigen::Vector3d s = q.head<3>();
  Eigen::Vector3d x = X.head<3>();
  return s.cross(x);
}

Real Sphere::curvature_pair(const AmbientVec&, const AmbientVec& X,
                            const AmbientVec& Y) const {
  const Real xy = X.dot(Y);
  return xy * xy - X.squaredNorm() * Y.squaredNorm();
}

// ---------------------------------------------------------------------- T^2

namespace {
inline Eigen::Vector2d blk(const AmbientVec& v, int b) {
  return v.segment<2>(2 * b);
}
}  // namespace

AmbientVec FlatTorus::project(const AmbientVec& Q) const {
  // Distance to the torus is sqrt(d1^2 + d2^2) with per-circle distances d_i.
  const Real d1 = std::abs(blk(Q, 0).norm() - 1.0);
  const Real d2 = std::abs(blk(Q, 1).norm() - 1.0);
  if (std::sqrt(d1 * d1 + d2 * d2) >= tubular_radius())
    throw OutsideTubularNeighborhood("point outside the torus tube");
  AmbientVec out(4);
  out.segment<2>(0) = blk(Q, 0).normalized();
  out.segment<2>(2) = blk(Q, 1).normalized();
  return out;
}

AmbientMat FlatTorus::d_pi(const AmbientVec& Q) const {
  AmbientMat out = AmbientMat::Zero(4, 4);
  out.block<2, 2>(0, 0) = sphere_d_pi<2>(blk(Q, 0));
  out.block<2, 2>(2, 2) = sphere_d_pi<2>(blk(Q, 1));
  return out;
}

AmbientMat FlatTorus::d_rho(const AmbientVec& Q) const {
  AmbientMat out = AmbientMat::Zero(4, 4);
  out.block<2, 2>(0, 0) = sphere_d_rho<2>(blk(Q, 0));
  out.block<2, 2>(2, 2) = sphere_d_rho<2>(blk(Q, 1));
  return out;
}

AmbientVec FlatTorus::hess_pi(const AmbientVec& Q, const AmbientVec& X,
                              const AmbientVec& Y) const {
  AmbientVec out(4);
  out.segment<2>(0) = sphere_hess<2>(blk(Q, 0), blk(X, 0), blk(Y, 0));
  out.segment<2>(2) = sphere_hess<2>(blk(Q, 1), blk(X, 1), blk(Y, 1));
  return out;
}

AmbientVec FlatTorus::third_pi(const AmbientVec& Q, const AmbientVec& X,
                               const AmbientVec& Y, const AmbientVec& Z) const {
  AmbientVec out(4);
  out.segment<2>(0) =
      sphere_third<2>(blk(Q, 0), blk(X, 0), blk(Y, 0), blk(Z, 0));
  out.segment<2>(2) =
      sphere_third<2>(blk(Q, 1), blk(X, 1), blk(Y, 1), blk(Z, 1));
  return out;
}

AmbientVec FlatTorus::third_pi_contract(const AmbientVec& Q,
                                        const AmbientVec& X,
                                        const AmbientVec& Y,
                                        const AmbientVec& W) const {
  AmbientVec out(4);
  out.segment<2>(0) =
      sphere_third_contract<2>(blk(Q, 0), blk(X, 0), blk(Y, 0), blk(W, 0));
  out.segment<2>(2) =
      sphere_third_contract<2>(blk(Q, 1), blk(X, 1), blk(Y, 1), blk(W, 1));
  return out;
}

AmbientVec FlatTorus::j_apply(const AmbientVec& q, const AmbientVec& X) const {
  // Tangent frame t1 = (-q2, q1, 0, 0), t2 = (0, 0, -q4, q3); J t1 = t2,
  // J t2 = -t1.
  AmbientVec t1 = AmbientVec::Zero(4), t2 = AmbientVec::Zero(4);
  t1(0) = -q(1);
  t1(1) = q(0);
  t2(2) = -q(3);
  t2(3) = q(2);
  const Real a = t1.dot(X), b = t2.dot(X);
  return a * t2 - b * t1;
}

const Sphere& sphere() {
  static const Sphere s;
  return s;
}

const FlatTorus& flat_torus() {
  static const FlatTorus t;
  return t;
}

std::shared_ptr<const TargetManifold> make_target(const std::string& name) {
  if (name == "s2") return std::shared_ptr<const TargetManifold>(&sphere(), [](auto*) {});
  if (name == "torus")
    return std::shared_ptr<const TargetManifold>(&flat_torus(), [](auto*) {});
  throw ConfigError("unknown target '" + name + "' (expected s2 or torus)");
}

// -------------------------------------------------------------------- chart

std::array<std::array<std::array<Real, 2>, 2>, 2> christoffel_s2(
    const ChartPoint& c) {
  if (c.theta < kChartMargin || c.theta > M_PI - kChartMargin)
    throw PoleProximity("theta = " + std::to_string(c.theta));
  std::array<std::array<std::array<Real, 2>, 2>, 2> g{};
  const Real ct = std::cos(c.theta), st = std::sin(c.theta);
  g[0][1][1] = -st * ct;              // Gamma^theta_{phi phi}
  g[1][0][1] = g[1][1][0] = ct / st;  // Gamma^phi_{theta phi}
  return g;
}

Eigen::Vector3d chart_embed(const ChartPoint& c) {
  return {std::sin(c.theta) * std::cos(c.phi),
          std::sin(c.theta) * std::sin(c.phi), std::cos(c.theta)};
}

void chart_frame(const ChartPoint& c, Eigen::Vector3d& e_theta,
                 Eigen::Vector3d& e_phi) {
  e_theta = {std::cos(c.theta) * std::cos(c.phi),
             std::cos(c.theta) * std::sin(c.phi), -std::sin(c.theta)};
  e_phi = {-std::sin(c.theta) * std::sin(c.phi),
           std::sin(c.theta) * std::cos(c.phi), 0.0};
}

}  // namespace sflab::geometry
