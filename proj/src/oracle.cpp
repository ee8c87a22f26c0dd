#include "sflab/oracle.hpp"

#include <algorithm>
#include <cmath>

namespace sflab::oracle {

Real fd_gateaux(const std::function<Real(const Field&)>& functional,
                const Field& v, const Field& phi, const OracleConfig& cfg,
                const std::function<bool(const Field&)>& tube_ok) {
  const Real rel = std::clamp(cfg.fd_step, 1e-8, 1e-3);
  const Real vscale = 1.0 + v.values.abs().maxCoeff();
  const Real pscale = 1.0 + phi.values.abs().maxCoeff();
  const Real h0 = rel * vscale / pscale;

  auto shifted = [&](Real s) {
    Field w = v;
    w.values += s * phi.values;
    return w;
  };
  if (tube_ok) {
    if (!tube_ok(shifted(h0)) || !tube_ok(shifted(-h0)))
      throw TubeExit("finite-difference stencil leaves the tube");
  }

  const int levels = std::max(1, cfg.richardson_levels);
  std::vector<std::vector<Real>> table(levels);
  Real h = h0;
  for (int j = 0; j < levels; ++j, h *= 0.5) {
    table[j].resize(j + 1);
    table[j][0] = (functional(shifted(h)) - functional(shifted(-h))) / (2 * h);
    Real pow4 = 4.0;
    for (int m = 1; m <= j; ++m, pow4 *= 4.0)
      table[j][m] = (pow4 * table[j][m - 1] - table[j - 1][m - 1]) / (pow4 - 1);
  }
  return table[levels - 1][levels - 1];
}

Real helical_omega(Real theta, int k) {
  return static_cast<Real>(k) * k * std::cos(theta);
}

Eigen::Vector3d exact_helical(Real theta, int k, Real t, Real x) {
  const Real w = helical_omega(theta, k);
  const Real ph = k * x - w * t;
  return {std::sin(theta) * std::cos(ph), std::sin(theta) * std::sin(ph),
          std::cos(theta)};
}

Real smoothing_constant(int i) {
  auto f = [i](Real y) { return std::pow(y, i) * std::exp(-y * y * y * y); };
  const Real gr = (std::sqrt(5.0) - 1.0) / 2.0;
  Real a = 0.0, b = 2.0;
  Real c = b - gr * (b - a), d = a + gr * (b - a);
  while (b - a > 1e-13) {
    if (f(c) > f(d))
      b = d;
    else
      a = c;
    c = b - gr * (b - a);
    d = a + gr * (b - a);
  }
  return f(0.5 * (a + b));
}

AmbientVec transport_ode(const AmbientVec& pt1, const AmbientVec& pt2,
                         const AmbientVec& V, const OracleConfig& cfg) {
  const Eigen::Vector3d p = pt1.head<3>(), q = pt2.head<3>();
  const Real dot = std::clamp(p.dot(q), -1.0, 1.0);
  if (dot <= -1.0 + 1e-6)
    throw AntipodalPoints("transport between near-antipodal points");
  const Real angle = std::acos(dot);
  if (angle < 1e-14) return V;

  const Eigen::Vector3d axis = (q - dot * p) / std::sin(angle);
  auto gamma = [&](Real s) -> Eigen::Vector3d {
    return std::cos(s) * p + std::sin(s) * axis;
  };
  auto dgamma = [&](Real s) -> Eigen::Vector3d {
    return -std::sin(s) * p + std::cos(s) * axis;
  };
  auto rhs = [&](Real s, const Eigen::Vector3d& v) -> Eigen::Vector3d {
    return -dgamma(s).dot(v) * gamma(s);
  };

  int n = std::max<int>(64, static_cast<int>(std::ceil(angle * 1024)));
  if (cfg.ode_tol < 1e-10) n *= 2;
  const Real hs = angle / n;
  Eigen::Vector3d v = V.head<3>();
  for (int j = 0; j < n; ++j) {
    const Real s = j * hs;
    const Eigen::Vector3d k1 = rhs(s, v);
    const Eigen::Vector3d k2 = rhs(s + 0.5 * hs, v + 0.5 * hs * k1);
    const Eigen::Vector3d k3 = rhs(s + 0.5 * hs, v + 0.5 * hs * k2);
    const Eigen::Vector3d k4 = rhs(s + hs, v + hs * k3);
    v += (hs / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4);
  }
  return v;
}

Eigen::Vector3d sphere_nearest_bruteforce(const Eigen::Vector3d& Q, int mesh) {
  auto scan = [&Q](Real th0, Real th1, Real ph0, Real ph1, int n,
                   Real& bth, Real& bph) {
    Real best = std::numeric_limits<Real>::max();
    for (int i = 0; i <= n; ++i) {
      const Real th = th0 + (th1 - th0) * i / n;
      for (int j = 0; j <= n; ++j) {
        const Real ph = ph0 + (ph1 - ph0) * j / n;
        const Eigen::Vector3d P(std::sin(th) * std::cos(ph),
                                std::sin(th) * std::sin(ph), std::cos(th));
        const Real d = (Q - P).squaredNorm();
        if (d < best) {
          best = d;
          bth = th;
          bph = ph;
        }
      }
    }
  };
  Real th = 0, ph = 0;
  scan(0, M_PI, -M_PI, M_PI, mesh, th, ph);
  Real dth = 2 * M_PI / mesh, dph = 2 * M_PI / mesh;
  for (int pass = 0; pass < 4; ++pass) {
    scan(th - dth, th + dth, ph - dph, ph + dph, 64, th, ph);
    dth /= 32;
    dph /= 32;
  }
  return {std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph),
          std::cos(th)};
}

AmbientMat fd_d_pi(const geometry::TargetManifold& m, const AmbientVec& Q,
                   Real h) {
  const int p = m.ambient_dim();
  AmbientMat out(p, p);
  for (int a = 0; a < p; ++a) {
    AmbientVec e = AmbientVec::Zero(p);
    e(a) = 1.0;
    out.col(a) = (m.project(Q + h * e) - m.project(Q - h * e)) / (2 * h);
  }
  return out;
}

AmbientVec fd_hess_pi(const geometry::TargetManifold& m, const AmbientVec& Q,
                      const AmbientVec& X, const AmbientVec& Y, Real h) {
  return (m.project(Q + h * X + h * Y) - m.project(Q + h * X - h * Y) -
          m.project(Q - h * X + h * Y) + m.project(Q - h * X - h * Y)) /
         (4 * h * h);
}

AmbientVec fd_third_pi(const geometry::TargetManifold& m, const AmbientVec& Q,
                       const AmbientVec& X, const AmbientVec& Y,
                       const AmbientVec& Z, Real h) {
  AmbientVec acc = AmbientVec::Zero(m.ambient_dim());
  for (int s1 : {-1, 1})
    for (int s2 : {-1, 1})
      for (int s3 : {-1, 1}) {
        const Real sign = s1 * s2 * s3;
        acc += sign * m.project(Q + h * (s1 * X + s2 * Y + s3 * Z));
      }
  return acc / (8 * h * h * h);
}

std::array<std::array<std::array<Real, 2>, 2>, 2> christoffel_s2_fd(Real theta,
                                                                    Real h) {
  // g = diag(1, sin^2 theta), only theta-derivatives are nonzero.
  auto gphi = [](Real th) { return std::sin(th) * std::sin(th); };
  const Real dg = (gphi(theta + h) - gphi(theta - h)) / (2 * h);
  std::array<std::array<std::array<Real, 2>, 2>, 2> out{};
  // Gamma^i_{jk} = 1/2 g^{il} (d_j g_{lk} + d_k g_{lj} - d_l g_{jk})
  out[0][1][1] = -0.5 * dg;                       // l = theta, g^tt = 1
  out[1][0][1] = out[1][1][0] = 0.5 * dg / gphi(theta);
  return out;
}

Eigen::ArrayXcd dft_direct(const Eigen::ArrayXd& line) {
  const Index m = line.size();
  Eigen::ArrayXcd out(m);
  for (Index k = 0; k < m; ++k) {
    Complex acc(0, 0);
    for (Index j = 0; j < m; ++j) {
      const Real ang = -2.0 * M_PI * static_cast<Real>(j) * k / m;
      acc += line(j) * Complex(std::cos(ang), std::sin(ang));
    }
    out(k) = acc;
  }
  return out;
}

Real sobolev_norm_direct(const Field& f, Real s) {
  const GridSpec& g = f.grid;
  const int m = g.points;
  const Real mn = std::pow(static_cast<Real>(m), g.dim);
  Real acc = 0.0;
  for (int c = 0; c < f.components(); ++c) {
    if (g.dim == 1) {
      Eigen::ArrayXcd ft = dft_direct(f.values.col(c));
      for (int j = 0; j < m; ++j) {
        const Real k = g.wavenumber(j);
        acc += std::pow(1.0 + k * k, s) * std::norm(ft(j) / mn);
      }
    } else {
      for (int jx = 0; jx < m; ++jx)
        for (int jy = 0; jy < m; ++jy) {
          Complex acc2(0, 0);
          for (int iy = 0; iy < m; ++iy)
            for (int ix = 0; ix < m; ++ix) {
              const Real ang =
                  -2.0 * M_PI * (static_cast<Real>(ix) * jx + static_cast<Real>(iy) * jy) / m;
              acc2 += f.values(static_cast<Index>(iy) * m + ix, c) *
                      Complex(std::cos(ang), std::sin(ang));
            }
          const Real kx = g.wavenumber(jx), ky = g.wavenumber(jy);
          acc += std::pow(1.0 + kx * kx + ky * ky, s) * std::norm(acc2 / mn);
        }
    }
  }
  return std::sqrt(g.measure() * acc);
}

Field fractional_direct(const Field& f, Real s) {
  const GridSpec& g = f.grid;
  const int m = g.points;
  Field out(g, f.components());
  for (int c = 0; c < f.components(); ++c) {
    Eigen::ArrayXcd ft = dft_direct(f.values.col(c));
    for (Index i = 0; i < g.num_points(); ++i) {
      const Real x = g.coord(i).x();
      Complex acc(0, 0);
      for (int j = 0; j < m; ++j) {
        const Real k = g.wavenumber(j);
        const Real mag = k == 0.0 ? (s > 0.0 ? 0.0 : 1.0) : std::pow(std::abs(k), s);
        acc += mag * (ft(j) / static_cast<Real>(m)) *
               Complex(std::cos(k * x), std::sin(k * x));
      }
      out.values(i, c) = acc.real();
    }
  }
  return out;
}

Field rk4_step(const std::function<Field(const Field&)>& rhs, const Field& v,
               Real dt, int substeps) {
  Field w = v;
  const Real h = dt / substeps;
  for (int j = 0; j < substeps; ++j) {
    Field k1 = rhs(w);
    Field w2 = w;
    w2.values += 0.5 * h * k1.values;
    Field k2 = rhs(w2);
    Field w3 = w;
    w3.values += 0.5 * h * k2.values;
    Field k3 = rhs(w3);
    Field w4 = w;
    w4.values += h * k3.values;
    Field k4 = rhs(w4);
    w.values +=
        (h / 6.0) * (k1.values + 2 * k2.values + 2 * k3.values + k4.values);
  }
  return w;
}

}  // namespace sflab::oracle
