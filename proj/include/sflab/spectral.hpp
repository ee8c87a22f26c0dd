#ifndef SFLAB_SPECTRAL_HPP
#define SFLAB_SPECTRAL_HPP

#include "sflab/field.hpp"

#include <functional>

namespace sflab::spectral {

/// Fourier coefficients of a Field, unscaled forward transform per component
/// (divide by M^n for the analytic coefficients of sum_k c_k e^{i<k,x>}).
struct Spectrum {
  GridSpec grid;
  Eigen::ArrayXXcd coeffs;  // num_points x p, same flat mode layout as Field
};

/// Scalar symbol acting diagonally in frequency; k is the wavevector
/// (k.y() == 0 in one dimension).
using Multiplier = std::function<Complex(const Eigen::Vector2d& k)>;

Spectrum to_spectrum(const Field& f);
Field from_spectrum(const Spectrum& s);

Field apply_multiplier(const Field& f, const Multiplier& symbol);

/// Spectral partial derivative along axis (0 = x, 1 = y) of given order.
/// The Nyquist mode is zeroed for odd orders so results stay real.
Field derivative(const Field& f, int axis, int order = 1);
Field laplacian(const Field& f);
Field bilaplacian(const Field& f);

/// D^s with symbol |k|^s; |0|^s := 0 for s > 0 and D^0 = identity.
Field fractional(const Field& f, Real s);

/// Fourth-order heat semigroup S_eps(t): multiplier e^{-eps |k|^4 t}.
Field semigroup(const Field& f, Real eps, Real t);

/// 2/3-rule dealiasing: zero all modes with |mode| > M/3 on any axis.
Field dealias(const Field& f);
bool is_dealias_kept_mode(const GridSpec& g, Index flat);

/// L^2(L^n-normalized) quantities via Parseval.
Real l2_norm(const Field& f);
Real l2_inner(const Field& a, const Field& b);
Real l2_distance(const Field& a, const Field& b);

/// (L^n sum_k (1+|k|^2)^s |fhat_k|^2)^{1/2}, all components summed.
Real sobolev_norm(const Field& f, Real s);
/// H^s norm of the gradient: (L^n sum_k (1+|k|^2)^s |k|^2 |fhat_k|^2)^{1/2}.
Real grad_sobolev_norm(const Field& f, Real s);
/// Homogeneous seminorm (L^n sum_k |k|^{2s} |fhat_k|^2)^{1/2}.
Real homogeneous_norm(const Field& f, Real s);

/// Rectangle-rule L^p norm of the pointwise Euclidean magnitude;
/// p = infinity gives the grid max.
Real lp_norm(const Field& f, Real p);

/// Pointwise Euclidean magnitude as a scalar field.
Field magnitude(const Field& f);

}  // namespace sflab::spectral

#endif  // SFLAB_SPECTRAL_HPP
