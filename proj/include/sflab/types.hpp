#ifndef SFLAB_TYPES_HPP
#define SFLAB_TYPES_HPP

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace sflab {

using Real = double;
using Complex = std::complex<Real>;
using Index = Eigen::Index;

/// Ambient vectors live in R^p with p <= 4 (S^2 in R^3, T^2 in R^4); the
/// max-size bound keeps per-point geometry kernels heap-free.
using AmbientVec = Eigen::Matrix<Real, Eigen::Dynamic, 1, Eigen::ColMajor, 4, 1>;
using AmbientMat =
    Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, 4, 4>;

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct OutsideTubularNeighborhood : Error {
  using Error::Error;
};
struct NotTangent : Error {
  using Error::Error;
};
struct PoleProximity : Error {
  using Error::Error;
};
struct PicardDiverged : Error {
  using Error::Error;
};
struct BlowupDetected : Error {
  using Error::Error;
};
struct MidpointSolveFailed : Error {
  using Error::Error;
};
struct AntipodalPoints : Error {
  using Error::Error;
};
struct DegenerateDenominator : Error {
  using Error::Error;
};
struct TubeExit : Error {
  using Error::Error;
};
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace sflab

#endif  // SFLAB_TYPES_HPP
