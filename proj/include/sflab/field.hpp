#ifndef SFLAB_FIELD_HPP
#define SFLAB_FIELD_HPP

#include "sflab/grid.hpp"
#include "sflab/types.hpp"

namespace sflab {

/// A map from grid points to R^p stored as (num_points x p); each component
/// is one contiguous column. Row i is the ambient value at flat point i.
struct Field {
  GridSpec grid;
  Eigen::ArrayXXd values;

  Field() = default;
  Field(const GridSpec& g, int components)
      : grid(g), values(Eigen::ArrayXXd::Zero(g.num_points(), components)) {}
  Field(const GridSpec& g, Eigen::ArrayXXd vals)
      : grid(g), values(std::move(vals)) {}

  int components() const { return static_cast<int>(values.cols()); }
  Index num_points() const { return values.rows(); }

  AmbientVec at(Index i) const {
    return values.row(i).transpose().matrix();
  }
  void set(Index i, const AmbientVec& q) {
    values.row(i) = q.transpose().array();
  }

  bool finite() const { return values.isFinite().all(); }
};

inline Field zeros_like(const Field& f) { return Field(f.grid, f.components()); }

/// Component means; on the torus this is the zero Fourier mode (the base
/// point gamma used by the Duhamel stepper).
inline Eigen::VectorXd component_mean(const Field& f) {
  return f.values.colwise().mean().matrix().transpose();
}

}  // namespace sflab

#endif  // SFLAB_FIELD_HPP
