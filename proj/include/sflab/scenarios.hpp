#ifndef SFLAB_SCENARIOS_HPP
#define SFLAB_SCENARIOS_HPP

#include "sflab/field.hpp"

#include <cstdint>

namespace sflab::scenarios {

/// Helical wave on S^2 at time t: the exact traveling solution of the
/// Schroedinger map flow (constant in y when the grid is two-dimensional).
Field helical(const GridSpec& g, Real theta, int k, Real t = 0.0);

/// On-sphere bump: north pole tilted by a Gaussian angle profile
/// a(x) = amplitude * exp(-|x - L/2|^2 / width^2); constant outside the bump.
Field bump(const GridSpec& g, Real amplitude, Real width);

/// Constant map.
Field constant(const GridSpec& g, const Eigen::VectorXd& point);

/// Flat-torus field from winding numbers and smooth phase perturbations:
/// alpha = 2 pi m1 x / L + a sin(2 pi x/L), beta analogous.
Field torus_winding(const GridSpec& g, int m1, int m2, Real a1 = 0.0,
                    Real a2 = 0.0);

/// Scalar Gaussian bump centered on a grid point (GN test profile).
Field gaussian_scalar(const GridSpec& g, Real amplitude, Real width);

/// Band-limited random field: trigonometric polynomial with modes up to kmax
/// per axis and 1/k^2-decaying random amplitudes. Deterministic in seed.
Field random_smooth(const GridSpec& g, int components, int kmax,
                    Real amplitude, std::uint64_t seed);

/// Random smooth on-sphere field: north-pole offset plus a random smooth
/// 3-vector, normalized pointwise.
Field random_on_sphere(const GridSpec& g, int kmax, Real amplitude,
                       std::uint64_t seed);

/// Random smooth on-torus field via random smooth phase fields.
Field random_on_torus(const GridSpec& g, int kmax, Real amplitude,
                      std::uint64_t seed);

/// Off-manifold state inside the tube: on-sphere field scaled radially by
/// 1 + r(x) with a band-limited r, |r| <= amplitude.
Field random_in_tube_s2(const GridSpec& g, int kmax, Real amplitude,
                        std::uint64_t seed);

/// Pointwise-tangent random smooth perturbation along an on-manifold base.
Field random_tangent(const Field& base, const std::string& target, int kmax,
                     Real amplitude, std::uint64_t seed);

}  // namespace sflab::scenarios

#endif  // SFLAB_SCENARIOS_HPP
