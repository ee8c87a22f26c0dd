#include "sflab/scenarios.hpp"

#include "sflab/geometry.hpp"
#include "sflab/oracle.hpp"

#include <cmath>
#include <random>

namespace sflab::scenarios {

Field helical(const GridSpec& g, Real theta, int k, Real t) {
  Field out(g, 3);
  for (Index i = 0; i < g.num_points(); ++i) {
    const Real x = g.coord(i).x();
    const Eigen::Vector3d s = oracle::exact_helical(theta, k, t, x);
    out.values(i, 0) = s.x();
    out.values(i, 1) = s.y();
    out.values(i, 2) = s.z();
  }
  return out;
}

Field bump(const GridSpec& g, Real amplitude, Real width) {
  Field out(g, 3);
  const Real c = 0.5 * g.period;
  for (Index i = 0; i < g.num_points(); ++i) {
    const Eigen::Vector2d x = g.coord(i);
    Real r2 = (x.x() - c) * (x.x() - c);
    if (g.dim == 2) r2 += (x.y() - c) * (x.y() - c);
    const Real a = amplitude * std::exp(-r2 / (width * width));
    out.values(i, 0) = std::sin(a);
    out.values(i, 1) = 0.0;
    out.values(i, 2) = std::cos(a);
  }
  return out;
}

Field constant(const GridSpec& g, const Eigen::VectorXd& point) {
  Field out(g, static_cast<int>(point.size()));
  for (int c = 0; c < out.components(); ++c) out.values.col(c) = point(c);
  return out;
}

Field torus_winding(const GridSpec& g, int m1, int m2, Real a1, Real a2) {
  Field out(g, 4);
  const Real w = 2.0 * M_PI / g.period;
  for (Index i = 0; i < g.num_points(); ++i) {
    const Eigen::Vector2d x = g.coord(i);
    const Real alpha = w * m1 * x.x() + a1 * std::sin(w * x.x());
    const Real beta = w * m2 * (g.dim == 2 ? x.y() : x.x()) +
                      a2 * std::sin(w * (g.dim == 2 ? x.y() : x.x()));
    out.values(i, 0) = std::cos(alpha);
    out.values(i, 1) = std::sin(alpha);
    out.values(i, 2) = std::cos(beta);
    out.values(i, 3) = std::sin(beta);
  }
  return out;
}

Field gaussian_scalar(const GridSpec& g, Real amplitude, Real width) {
  Field out(g, 1);
  const Real c = 0.5 * g.period;
  for (Index i = 0; i < g.num_points(); ++i) {
    const Eigen::Vector2d x = g.coord(i);
    Real r2 = (x.x() - c) * (x.x() - c);
    if (g.dim == 2) r2 += (x.y() - c) * (x.y() - c);
    out.values(i, 0) = amplitude * std::exp(-r2 / (width * width));
  }
  return out;
}

Field random_smooth(const GridSpec& g, int components, int kmax, Real amplitude,
                    std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<Real> normal(0.0, 1.0);
  Field out(g, components);
  const Real w = 2.0 * M_PI / g.period;

  for (int c = 0; c < components; ++c) {
    if (g.dim == 1) {
      for (int k = 1; k <= kmax; ++k) {
        const Real decay = amplitude / (k * k);
        const Real a = decay * normal(rng), b = decay * normal(rng);
        for (Index i = 0; i < g.num_points(); ++i) {
          const Real x = g.coord(i).x();
          out.values(i, c) += a * std::cos(w * k * x) + b * std::sin(w * k * x);
        }
      }
    } else {
      for (int kx = -kmax; kx <= kmax; ++kx)
        for (int ky = 0; ky <= kmax; ++ky) {
          if (ky == 0 && kx <= 0) continue;
          const Real k2 = static_cast<Real>(kx) * kx + static_cast<Real>(ky) * ky;
          if (k2 > static_cast<Real>(kmax) * kmax) continue;
          const Real decay = amplitude / k2;
          const Real a = decay * normal(rng), b = decay * normal(rng);
          for (Index i = 0; i < g.num_points(); ++i) {
            const Eigen::Vector2d x = g.coord(i);
            const Real ph = w * (kx * x.x() + ky * x.y());
            out.values(i, c) += a * std::cos(ph) + b * std::sin(ph);
          }
        }
    }
  }
  return out;
}

Field random_on_sphere(const GridSpec& g, int kmax, Real amplitude,
                       std::uint64_t seed) {
  Field f = random_smooth(g, 3, kmax, amplitude, seed);
  f.values.col(2) += 1.0;  // offset keeps the field away from the origin
  for (Index i = 0; i < g.num_points(); ++i) {
    Eigen::Vector3d q(f.values(i, 0), f.values(i, 1), f.values(i, 2));
    q.normalize();
    f.values(i, 0) = q.x();
    f.values(i, 1) = q.y();
    f.values(i, 2) = q.z();
  }
  return f;
}

Field random_on_torus(const GridSpec& g, int kmax, Real amplitude,
                      std::uint64_t seed) {
  Field phases = random_smooth(g, 2, kmax, amplitude, seed);
  Field out(g, 4);
  for (Index i = 0; i < g.num_points(); ++i) {
    out.values(i, 0) = std::cos(phases.values(i, 0));
    out.values(i, 1) = std::sin(phases.values(i, 0));
    out.values(i, 2) = std::cos(phases.values(i, 1));
    out.values(i, 3) = std::sin(phases.values(i, 1));
  }
  return out;
}

Field random_in_tube_s2(const GridSpec& g, int kmax, Real amplitude,
                        std::uint64_t seed) {
  Field s = random_on_sphere(g, kmax, 0.4, seed);
  Field r = random_smooth(g, 1, kmax, 1.0, seed + 1);
  const Real rmax = r.values.abs().maxCoeff();
  if (rmax > 0) r.values *= amplitude / rmax;
  for (int c = 0; c < 3; ++c) s.values.col(c) *= (1.0 + r.values.col(0));
  return s;
}

Field random_tangent(const Field& base, const std::string& target, int kmax,
                     Real amplitude, std::uint64_t seed) {
  auto m = geometry::make_target(target);
  Field raw = random_smooth(base.grid, base.components(), kmax, amplitude, seed);
  Field out(base.grid, base.components());
  for (Index i = 0; i < base.num_points(); ++i)
    out.set(i, m->d_pi(m->project(base.at(i))) * raw.at(i));
  return out;
}

}  // namespace sflab::scenarios
