#include "sflab/operators.hpp"

#include <cmath>

namespace sflab::operators {

namespace {

using geometry::TargetManifold;

Field maybe_dealias(const OperatorContext& ctx, const Field& f) {
  return ctx.dealias ? spectral::dealias(f) : f;
}

/// First derivatives, Laplacian and (optionally) the gradient of the
/// Laplacian, computed from a single forward transform.
struct Derivatives {
  std::vector<Field> d;      // d[alpha]
  Field lap;
  std::vector<Field> dlap;   // d[alpha] of Lap v, if requested
};

Derivatives compute_derivatives(const Field& v, bool need_dlap) {
  const GridSpec& g = v.grid;
  spectral::Spectrum s = spectral::to_spectrum(v);
  const int n = g.dim;

  auto modes = [&](Index flat, Real& kx, Real& ky) {
    if (n == 1) {
      kx = g.wavenumber(static_cast<int>(flat));
      ky = 0.0;
    } else {
      kx = g.wavenumber(static_cast<int>(flat % g.points));
      ky = g.wavenumber(static_cast<int>(flat / g.points));
    }
  };
  auto nyquist = [&](Index flat, int axis) {
    const int j = n == 1 ? static_cast<int>(flat)
                         : (axis == 0 ? static_cast<int>(flat % g.points)
                                      : static_cast<int>(flat / g.points));
    return j == g.points / 2;
  };

  Derivatives out;
  out.d.resize(n);
  if (need_dlap) out.dlap.resize(n);

  for (int axis = 0; axis < n; ++axis) {
    spectral::Spectrum t = s;
    for (Index i = 0; i < t.coeffs.rows(); ++i) {
      Real kx, ky;
      modes(i, kx, ky);
      const Real k = axis == 0 ? kx : ky;
      const Complex ik = nyquist(i, axis) ? Complex(0, 0) : Complex(0, k);
      t.coeffs.row(i) *= ik;
    }
    out.d[axis] = spectral::from_spectrum(t);
  }
  {
    spectral::Spectrum t = s;
    for (Index i = 0; i < t.coeffs.rows(); ++i) {
      Real kx, ky;
      modes(i, kx, ky);
      t.coeffs.row(i) *= Complex(-(kx * kx + ky * ky), 0);
    }
    out.lap = spectral::from_spectrum(t);
  }
  if (need_dlap) {
    for (int axis = 0; axis < n; ++axis) {
      spectral::Spectrum t = s;
      for (Index i = 0; i < t.coeffs.rows(); ++i) {
        Real kx, ky;
        modes(i, kx, ky);
        const Real k = axis == 0 ? kx : ky;
        const Complex w = nyquist(i, axis)
                              ? Complex(0, 0)
                              : Complex(0, -k * (kx * kx + ky * ky));
        t.coeffs.row(i) *= w;
      }
      out.dlap[axis] = spectral::from_spectrum(t);
    }
  }
  return out;
}

/// sum_alpha Pi_ab(v) A_alpha^a B_alpha^b, pointwise, dealiased.
Field hessian_trace(const OperatorContext& ctx, const Field& v,
                    const std::vector<Field>& A, const std::vector<Field>& B,
                    Real sign) {
  const TargetManifold& m = ctx.target();
  Field out(v.grid, v.components());
  for (Index i = 0; i < v.num_points(); ++i) {
    const AmbientVec q = v.at(i);
    AmbientVec acc = AmbientVec::Zero(v.components());
    for (size_t a = 0; a < A.size(); ++a)
      acc += m.hess_pi(q, A[a].at(i), B[a].at(i));
    out.set(i, sign * acc);
  }
  return maybe_dealias(ctx, out);
}

struct TensionParts {
  Field quad;     // dealiased Pi_ab dv dv trace
  Field tension;  // Lap v - quad
};

TensionParts tension_parts(const OperatorContext& ctx, const Field& v,
                           const Derivatives& dv) {
  TensionParts parts;
  parts.quad = hessian_trace(ctx, v, dv.d, dv.d, 1.0);
  parts.tension = Field(v.grid, dv.lap.values - parts.quad.values);
  return parts;
}

Field schrodinger_from(const OperatorContext& ctx, const Field& v,
                       const Field& lap) {
  const TargetManifold& m = ctx.target();
  Field out(v.grid, v.components());
  for (Index i = 0; i < v.num_points(); ++i) {
    const AmbientVec q = v.at(i);
    const AmbientVec base = m.project(q);
    const AmbientVec x = m.d_pi(q) * lap.at(i);
    out.set(i, m.j_apply(base, x));
  }
  return maybe_dealias(ctx, out);
}

/// F_lower = Lap(Pi_ab dv dv) + W^e Pi^e_abc dv^a dv^b
///           - 2 d_alpha(W^e Pi^e_cb dv^b_alpha), with W the (dealiased)
/// tension. The Hessian and third-derivative tensors of both built-in targets
/// are totally symmetric, so the output-slot contractions reuse the
/// directional kernels.
Field el_lower_from(const OperatorContext& ctx, const Field& v,
                    const Derivatives& dv, const Field& tension) {
  const TargetManifold& m = ctx.target();
  const Real sign = ctx.hessian_sign;
  const int n = v.grid.dim;
  const Field w = ctx.dealias ? spectral::dealias(tension) : tension;

  Field quad = hessian_trace(ctx, v, dv.d, dv.d, sign);
  Field out(v.grid, spectral::laplacian(quad).values);

  Field third_term(v.grid, v.components());
  for (Index i = 0; i < v.num_points(); ++i) {
    const AmbientVec q = v.at(i);
    const AmbientVec wi = w.at(i);
    AmbientVec acc = AmbientVec::Zero(v.components());
    for (int a = 0; a < n; ++a) {
      const AmbientVec da = dv.d[a].at(i);
      acc += m.third_pi_contract(q, da, da, wi);
    }
    third_term.set(i, sign * acc);
  }
  out.values += maybe_dealias(ctx, third_term).values;

  for (int a = 0; a < n; ++a) {
    Field s_a(v.grid, v.components());
    for (Index i = 0; i < v.num_points(); ++i)
      s_a.set(i, sign * m.hess_pi(v.at(i), w.at(i), dv.d[a].at(i)));
    out.values -= 2.0 * spectral::derivative(maybe_dealias(ctx, s_a), a).values;
  }
  return out;
}

Field normal_correction_from(const OperatorContext& ctx, const Field& v,
                             const Derivatives& dv, const Field& el_lower) {
  const TargetManifold& m = ctx.target();
  const Real sign = ctx.hessian_sign;
  const int n = v.grid.dim;

  Field quad = hessian_trace(ctx, v, dv.d, dv.d, sign);
  Field out(v.grid, spectral::laplacian(quad).values);

  for (int b = 0; b < n; ++b) {
    Field h_b(v.grid, v.components());
    for (Index i = 0; i < v.num_points(); ++i)
      h_b.set(i, sign * m.hess_pi(v.at(i), dv.lap.at(i), dv.d[b].at(i)));
    out.values += spectral::derivative(maybe_dealias(ctx, h_b), b).values;
  }

  Field c_term(v.grid, v.components());
  for (Index i = 0; i < v.num_points(); ++i) {
    const AmbientVec q = v.at(i);
    AmbientVec acc = AmbientVec::Zero(v.components());
    for (int a = 0; a < n; ++a)
      acc += m.hess_pi(q, dv.dlap[a].at(i), dv.d[a].at(i));
    c_term.set(i, sign * acc);
  }
  out.values += maybe_dealias(ctx, c_term).values;

  Field d_term(v.grid, v.components());
  for (Index i = 0; i < v.num_points(); ++i)
    d_term.set(i, m.d_rho(v.at(i)) * el_lower.at(i));
  out.values -= maybe_dealias(ctx, d_term).values;
  return out;
}

}  // namespace

OperatorContext make_context(const std::string& target, const GridSpec& grid,
                             bool dealias) {
  OperatorContext ctx;
  ctx.manifold = geometry::make_target(target);
  ctx.grid = grid;
  ctx.dealias = dealias;
  return ctx;
}

void ensure_in_tube(const OperatorContext& ctx, const Field& v) {
  const TargetManifold& m = ctx.target();
  for (Index i = 0; i < v.num_points(); ++i) m.project(v.at(i));
}

Field tension_ambient(const OperatorContext& ctx, const Field& v) {
  ensure_in_tube(ctx, v);
  Derivatives dv = compute_derivatives(v, false);
  return tension_parts(ctx, v, dv).tension;
}

Field schrodinger_term(const OperatorContext& ctx, const Field& v) {
  Derivatives dv = compute_derivatives(v, false);
  return schrodinger_from(ctx, v, dv.lap);
}

Field el_lower_order(const OperatorContext& ctx, const Field& v) {
  ensure_in_tube(ctx, v);
  Derivatives dv = compute_derivatives(v, false);
  TensionParts t = tension_parts(ctx, v, dv);
  return el_lower_from(ctx, v, dv, t.tension);
}

Field el_operator(const OperatorContext& ctx, const Field& v) {
  Field lower = el_lower_order(ctx, v);
  return Field(v.grid, spectral::bilaplacian(v).values - lower.values);
}

Field normal_correction(const OperatorContext& ctx, const Field& v) {
  ensure_in_tube(ctx, v);
  Derivatives dv = compute_derivatives(v, true);
  TensionParts t = tension_parts(ctx, v, dv);
  Field lower = el_lower_from(ctx, v, dv, t.tension);
  return normal_correction_from(ctx, v, dv, lower);
}

Field rhs_regularized(const OperatorContext& ctx, const Field& v, Real eps,
                      Real beta) {
  ensure_in_tube(ctx, v);
  Derivatives dv = compute_derivatives(v, true);
  TensionParts t = tension_parts(ctx, v, dv);
  Field lower = el_lower_from(ctx, v, dv, t.tension);
  Field el = Field(v.grid, spectral::bilaplacian(v).values - lower.values);
  Field h = normal_correction_from(ctx, v, dv, lower);
  Field fv = schrodinger_from(ctx, v, dv.lap);
  Field out(v.grid, v.components());
  out.values = -eps * (el.values - h.values) + fv.values + beta * t.tension.values;
  return out;
}

Field nonlinear_n(const OperatorContext& ctx, const Field& v, Real eps,
                  Real beta) {
  ensure_in_tube(ctx, v);
  Derivatives dv = compute_derivatives(v, true);
  TensionParts t = tension_parts(ctx, v, dv);
  Field lower = el_lower_from(ctx, v, dv, t.tension);
  Field h = normal_correction_from(ctx, v, dv, lower);
  Field fv = schrodinger_from(ctx, v, dv.lap);
  Field out(v.grid, v.components());
  out.values =
      eps * (lower.values + h.values) + fv.values + beta * t.tension.values;
  return out;
}

Functionals functionals(const OperatorContext& ctx, const Field& v) {
  ensure_in_tube(ctx, v);
  Derivatives dv = compute_derivatives(v, false);
  Real grad_sq = 0.0;
  for (const Field& d : dv.d) {
    const Real nrm = spectral::l2_norm(d);
    grad_sq += nrm * nrm;
  }
  TensionParts t = tension_parts(ctx, v, dv);
  const Real tn = spectral::l2_norm(t.tension);
  return {0.5 * grad_sq, 0.5 * tn * tn};
}

Field rho_field(const OperatorContext& ctx, const Field& v) {
  const TargetManifold& m = ctx.target();
  Field out(v.grid, v.components());
  for (Index i = 0; i < v.num_points(); ++i) out.set(i, m.rho(v.at(i)));
  return out;
}

Real sup_rho(const OperatorContext& ctx, const Field& v) {
  Field r = rho_field(ctx, v);
  return r.values.square().rowwise().sum().sqrt().maxCoeff();
}

Real l2_rho(const OperatorContext& ctx, const Field& v) {
  return spectral::l2_norm(rho_field(ctx, v));
}

Field tangential_part(const OperatorContext& ctx, const Field& v,
                      const Field& X) {
  const TargetManifold& m = ctx.target();
  Field out(v.grid, v.components());
  for (Index i = 0; i < v.num_points(); ++i)
    out.set(i, m.d_pi(v.at(i)) * X.at(i));
  return out;
}

Field normal_part(const OperatorContext& ctx, const Field& v, const Field& X) {
  const TargetManifold& m = ctx.target();
  Field out(v.grid, v.components());
  for (Index i = 0; i < v.num_points(); ++i)
    out.set(i, m.d_rho(v.at(i)) * X.at(i));
  return out;
}

Real energy_identity_rate(const OperatorContext& ctx, const Field& v, Real eps,
                          Real beta) {
  const TargetManifold& m = ctx.target();
  Derivatives dv = compute_derivatives(v, false);
  TensionParts t = tension_parts(ctx, v, dv);

  Real grad_tau_sq = 0.0;
  for (int a = 0; a < v.grid.dim; ++a) {
    Field dtau = spectral::derivative(t.tension, a);
    Field cov = tangential_part(ctx, v, dtau);
    const Real nrm = spectral::l2_norm(cov);
    grad_tau_sq += nrm * nrm;
  }
  const Real tau_nrm = spectral::l2_norm(t.tension);

  Real curv = 0.0;
  const Real hn = std::pow(v.grid.spacing(), v.grid.dim);
  for (Index i = 0; i < v.num_points(); ++i) {
    const AmbientVec q = v.at(i);
    const AmbientVec tau = t.tension.at(i);
    for (int a = 0; a < v.grid.dim; ++a)
      curv += hn * m.curvature_pair(q, dv.d[a].at(i), tau);
  }
  return -eps * grad_tau_sq - beta * tau_nrm * tau_nrm - eps * curv;
}

}  // namespace sflab::operators
