#ifndef SFLAB_GRID_HPP
#define SFLAB_GRID_HPP

#include "sflab/types.hpp"

#include <cmath>

namespace sflab {

/// Uniform periodic grid on [0,L)^n, n in {1,2}, M points per axis.
struct GridSpec {
  int dim = 1;
  int points = 256;   // per axis, power of two, >= 8
  Real period = 2.0 * M_PI;

  Index num_points() const {
    Index m = points;
    return dim == 1 ? m : m * m;
  }
  Real spacing() const { return period / points; }
  Real measure() const { return std::pow(period, dim); }

  /// Signed integer mode index in [-M/2, M/2) for storage index j.
  int mode_index(int j) const { return j < points / 2 ? j : j - points; }
  /// Wavenumber 2*pi*mode/L for storage index j along one axis.
  Real wavenumber(int j) const {
    return 2.0 * M_PI * mode_index(j) / period;
  }

  /// Physical coordinate of flat point index (x varies fastest).
  Eigen::Vector2d coord(Index flat) const {
    const Real h = spacing();
    if (dim == 1) return {h * static_cast<Real>(flat), 0.0};
    const Index ix = flat % points;
    const Index iy = flat / points;
    return {h * static_cast<Real>(ix), h * static_cast<Real>(iy)};
  }

  bool valid() const {
    if (dim != 1 && dim != 2) return false;
    if (points < 8 || (points & (points - 1)) != 0) return false;
    return period > 0.0;
  }

  friend bool operator==(const GridSpec& a, const GridSpec& b) {
    return a.dim == b.dim && a.points == b.points && a.period == b.period;
  }
};

}  // namespace sflab

#endif  // SFLAB_GRID_HPP
