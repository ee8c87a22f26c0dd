#include "sflab/spectral.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <limits>

namespace sflab::spectral {

namespace {

Eigen::FFT<Real>& fft_engine() {
  thread_local Eigen::FFT<Real> fft;
  return fft;
}

void fft_lines(Eigen::ArrayXXcd& data, const GridSpec& g, bool forward) {
  auto& fft = fft_engine();
  const int m = g.points;
  Eigen::VectorXcd line(m), out(m);
  for (Index c = 0; c < data.cols(); ++c) {
    if (g.dim == 1) {
      line = data.col(c).matrix();
      if (forward)
        fft.fwd(out, line);
      else
        fft.inv(out, line);
      data.col(c) = out.array();
      continue;
    }
    // x-lines (contiguous runs of length m)
    for (int iy = 0; iy < m; ++iy) {
      line = data.col(c).segment(static_cast<Index>(iy) * m, m).matrix();
      if (forward)
        fft.fwd(out, line);
      else
        fft.inv(out, line);
      data.col(c).segment(static_cast<Index>(iy) * m, m) = out.array();
    }
    // y-lines (stride m)
    for (int ix = 0; ix < m; ++ix) {
      for (int iy = 0; iy < m; ++iy)
        line(iy) = data(static_cast<Index>(iy) * m + ix, c);
      if (forward)
        fft.fwd(out, line);
      else
        fft.inv(out, line);
      for (int iy = 0; iy < m; ++iy)
        data(static_cast<Index>(iy) * m + ix, c) = out(iy);
    }
  }
}

// Storage indices (jx, jy) of a flat mode index.
inline void mode_of(const GridSpec& g, Index flat, int& jx, int& jy) {
  if (g.dim == 1) {
    jx = static_cast<int>(flat);
    jy = 0;
  } else {
    jx = static_cast<int>(flat % g.points);
    jy = static_cast<int>(flat / g.points);
  }
}

template <class SymbolFn>
Field apply_symbol(const Field& f, SymbolFn&& symbol) {
  Spectrum s = to_spectrum(f);
  const GridSpec& g = f.grid;
  for (Index i = 0; i < s.coeffs.rows(); ++i) {
    int jx, jy;
    mode_of(g, i, jx, jy);
    const Complex w = symbol(jx, jy);
    s.coeffs.row(i) *= w;
  }
  return from_spectrum(s);
}

}  // namespace

Spectrum to_spectrum(const Field& f) {
  Spectrum s{f.grid, f.values.cast<Complex>()};
  fft_lines(s.coeffs, f.grid, true);
  return s;
}

Field from_spectrum(const Spectrum& s) {
  Eigen::ArrayXXcd tmp = s.coeffs;
  fft_lines(tmp, s.grid, false);
  return Field(s.grid, tmp.real());
}

Field apply_multiplier(const Field& f, const Multiplier& symbol) {
  const GridSpec g = f.grid;
  return apply_symbol(f, [&](int jx, int jy) {
    Eigen::Vector2d k(g.wavenumber(jx), g.dim == 2 ? g.wavenumber(jy) : 0.0);
    return symbol(k);
  });
}

Field derivative(const Field& f, int axis, int order) {
  const GridSpec g = f.grid;
  const bool odd = (order % 2) != 0;
  return apply_symbol(f, [&](int jx, int jy) -> Complex {
    const int j = axis == 0 ? jx : jy;
    if (odd && j == g.points / 2) return Complex(0, 0);
    const Complex ik(0.0, g.wavenumber(j));
    return std::pow(ik, order);
  });
}

Field laplacian(const Field& f) {
  const GridSpec g = f.grid;
  return apply_symbol(f, [&](int jx, int jy) -> Complex {
    Real k2 = g.wavenumber(jx) * g.wavenumber(jx);
    if (g.dim == 2) k2 += g.wavenumber(jy) * g.wavenumber(jy);
    return Complex(-k2, 0.0);
  });
}

Field bilaplacian(const Field& f) {
  const GridSpec g = f.grid;
  return apply_symbol(f, [&](int jx, int jy) -> Complex {
    Real k2 = g.wavenumber(jx) * g.wavenumber(jx);
    if (g.dim == 2) k2 += g.wavenumber(jy) * g.wavenumber(jy);
    return Complex(k2 * k2, 0.0);
  });
}

Field fractional(const Field& f, Real s) {
  const GridSpec g = f.grid;
  return apply_symbol(f, [&](int jx, int jy) -> Complex {
    Real k2 = g.wavenumber(jx) * g.wavenumber(jx);
    if (g.dim == 2) k2 += g.wavenumber(jy) * g.wavenumber(jy);
    if (k2 == 0.0) return Complex(s > 0.0 ? 0.0 : 1.0, 0.0);
    return Complex(std::pow(k2, 0.5 * s), 0.0);
  });
}

Field semigroup(const Field& f, Real eps, Real t) {
  const GridSpec g = f.grid;
  return apply_symbol(f, [&](int jx, int jy) -> Complex {
    Real k2 = g.wavenumber(jx) * g.wavenumber(jx);
    if (g.dim == 2) k2 += g.wavenumber(jy) * g.wavenumber(jy);
    return Complex(std::exp(-eps * k2 * k2 * t), 0.0);
  });
}

bool is_dealias_kept_mode(const GridSpec& g, Index flat) {
  int jx, jy;
  mode_of(g, flat, jx, jy);
  const int cut = g.points / 3;
  if (std::abs(g.mode_index(jx)) > cut) return false;
  if (g.dim == 2 && std::abs(g.mode_index(jy)) > cut) return false;
  return true;
}

Field dealias(const Field& f) {
  Spectrum s = to_spectrum(f);
  for (Index i = 0; i < s.coeffs.rows(); ++i)
    if (!is_dealias_kept_mode(f.grid, i)) s.coeffs.row(i) = Complex(0, 0);
  return from_spectrum(s);
}

Real l2_norm(const Field& f) {
  const Real hn = std::pow(f.grid.spacing(), f.grid.dim);
  return std::sqrt(hn * f.values.square().sum());
}

Real l2_inner(const Field& a, const Field& b) {
  const Real hn = std::pow(a.grid.spacing(), a.grid.dim);
  return hn * (a.values * b.values).sum();
}

Real l2_distance(const Field& a, const Field& b) {
  const Real hn = std::pow(a.grid.spacing(), a.grid.dim);
  return std::sqrt(hn * (a.values - b.values).square().sum());
}

namespace {

// weight(k^2)-weighted Parseval sum over all modes and components.
template <class WeightFn>
Real weighted_mode_sum(const Field& f, WeightFn&& weight) {
  Spectrum s = to_spectrum(f);
  const GridSpec& g = f.grid;
  const Real mn = std::pow(static_cast<Real>(g.points), g.dim);
  const Real scale = g.measure() / (mn * mn);
  Real acc = 0.0;
  for (Index i = 0; i < s.coeffs.rows(); ++i) {
    int jx, jy;
    mode_of(g, i, jx, jy);
    Real k2 = g.wavenumber(jx) * g.wavenumber(jx);
    if (g.dim == 2) k2 += g.wavenumber(jy) * g.wavenumber(jy);
    const Real w = weight(k2);
    if (w == 0.0) continue;
    acc += w * s.coeffs.row(i).abs2().sum();
  }
  return scale * acc;
}

}  // namespace

Real sobolev_norm(const Field& f, Real s) {
  return std::sqrt(
      weighted_mode_sum(f, [s](Real k2) { return std::pow(1.0 + k2, s); }));
}

Real grad_sobolev_norm(const Field& f, Real s) {
  return std::sqrt(weighted_mode_sum(
      f, [s](Real k2) { return k2 * std::pow(1.0 + k2, s); }));
}

Real homogeneous_norm(const Field& f, Real s) {
  return std::sqrt(weighted_mode_sum(f, [s](Real k2) {
    return k2 == 0.0 ? (s > 0.0 ? 0.0 : 1.0) : std::pow(k2, s);
  }));
}

Field magnitude(const Field& f) {
  Field out(f.grid, 1);
  out.values.col(0) = f.values.square().rowwise().sum().sqrt();
  return out;
}

Real lp_norm(const Field& f, Real p) {
  Eigen::ArrayXd mag = f.values.square().rowwise().sum().sqrt();
  if (std::isinf(p)) return mag.maxCoeff();
  const Real hn = std::pow(f.grid.spacing(), f.grid.dim);
  return std::pow(hn * mag.pow(p).sum(), 1.0 / p);
}

}  // namespace sflab::spectral
