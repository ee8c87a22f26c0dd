#include "sflab/flow.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>

namespace sflab::flow {

namespace {

void add_row_constant(Field& f, const Eigen::VectorXd& c, Real sign) {
  f.values.rowwise() += sign * c.transpose().array();
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

/// Full tube scan every 10 steps, a deterministic 1% sample otherwise.
void cadence_tube_check(const OperatorContext& ctx, const Field& v, long step,
                        std::uint64_t seed) {
  const auto& m = ctx.target();
  if (step % 10 == 0) {
    operators::ensure_in_tube(ctx, v);
    return;
  }
  const Index n = v.num_points();
  const Index samples = std::max<Index>(1, n / 100);
  std::uint64_t state = splitmix64(seed ^ static_cast<std::uint64_t>(step));
  for (Index s = 0; s < samples; ++s) {
    state = splitmix64(state);
    m.project(v.at(static_cast<Index>(state % static_cast<std::uint64_t>(n))));
  }
}

Real leading_order(const FlowParams& p) {
  return p.sobolev_orders.empty() ? 6.0 : p.sobolev_orders.front();
}

DiagnosticsRecord make_record(const OperatorContext& ctx, const Field& v,
                              const FlowParams& p, Real t, int picard_iters,
                              std::int64_t wall_ns, Real* identity_rate) {
  DiagnosticsRecord r;
  r.t = t;
  const operators::Functionals fn = operators::functionals(ctx, v);
  r.energy = fn.energy;
  r.tension_energy = fn.tension_energy;
  for (Real s : p.sobolev_orders)
    r.grad_sobolev.push_back(spectral::grad_sobolev_norm(v, s));
  r.sup_rho = operators::sup_rho(ctx, v);
  r.l2_rho = operators::l2_rho(ctx, v);
  r.picard_iters = picard_iters;
  r.wall_ns = wall_ns;
  r.energy_residual = std::numeric_limits<Real>::quiet_NaN();
  if (identity_rate)
    *identity_rate = operators::energy_identity_rate(ctx, v, p.eps, p.beta);
  return r;
}

void backfill_energy_residuals(std::vector<DiagnosticsRecord>& recs,
                               const std::vector<Real>& rates) {
  for (size_t k = 1; k + 1 < recs.size(); ++k) {
    const Real dt = recs[k + 1].t - recs[k - 1].t;
    if (dt <= 0) continue;
    const Real dedt = (recs[k + 1].energy - recs[k - 1].energy) / dt;
    const Real denom = std::max(std::abs(rates[k]), 1e-14 * (1 + std::abs(dedt)));
    recs[k].energy_residual = std::abs(dedt - rates[k]) / denom;
  }
}

void project_pointwise(const OperatorContext& ctx, Field& v) {
  const auto& m = ctx.target();
  for (Index i = 0; i < v.num_points(); ++i) v.set(i, m.project(v.at(i)));
}

}  // namespace

Field duhamel_step(const OperatorContext& ctx, const Field& v,
                   const FlowParams& p, StepStats* stats) {
  const Real dt = p.dt;
  const Eigen::VectorXd gamma = component_mean(v);

  Field centered = v;
  add_row_constant(centered, gamma, -1.0);
  Field lin = spectral::semigroup(centered, p.eps, dt);
  add_row_constant(lin, gamma, +1.0);

  Field base = lin;
  if (!p.zero_nonlinearity) {
    Field n0 = operators::nonlinear_n(ctx, v, p.eps, p.beta);
    base.values += (0.5 * dt) * spectral::semigroup(n0, p.eps, dt).values;
  }

  Field w = lin;  // Picard seed: semigroup-propagated previous state
  if (p.zero_nonlinearity) return w;

  Real prev_diff = std::numeric_limits<Real>::infinity();
  int grow = 0;
  for (int iter = 1; iter <= p.picard_max; ++iter) {
    Field n_w = operators::nonlinear_n(ctx, w, p.eps, p.beta);
    Field w_next = base;
    w_next.values += (0.5 * dt) * n_w.values;
    const Real diff = spectral::l2_distance(w_next, w);
    w = std::move(w_next);
    if (stats) {
      stats->iterations = iter;
      stats->diffs.push_back(diff);
    }
    if (diff < p.picard_tol) return w;
    if (diff > prev_diff) {
      if (++grow >= 3)
        throw PicardDiverged("Picard differences grew for 3 iterations at dt=" +
                             std::to_string(dt));
    } else {
      grow = 0;
    }
    prev_diff = diff;
  }
  throw PicardDiverged("no Picard convergence within picard_max iterations");
}

Real step_size_heuristic(const Field& v0, const FlowParams& p) {
  // Calibrated on the reference helical scenario (S^2, M=256, L=2pi,
  // theta=pi/3, k=2, eps=1e-3) so the Picard contraction factor stays <= 1/2.
  constexpr Real kCalibration = 1.1e37;
  const Real x = spectral::grad_sobolev_norm(v0, leading_order(p));
  const Real b1 = std::pow(p.eps, 3) * std::pow(1.0 + x, -12.0);
  const Real b2 = std::pow(1.0 + x, -4.0) / p.eps;
  Real dt = kCalibration * std::min(b1, b2);
  if (p.dt > 0) dt = std::min(dt, p.dt);
  return dt;
}

Real energy_horizon(const Field& v0, Real s) {
  const Real e0n = spectral::grad_sobolev_norm(v0, s);
  const Real e0 = e0n * e0n;
  const Real q = 2.0 * v0.grid.dim + s + 8.0;
  return std::min(1.0, std::pow(e0, -q)) / (8.0 * q);
}

Trajectory integrate(const OperatorContext& ctx, const Field& v0,
                     const FlowParams& p) {
  if (p.eps == 0.0 && !p.allow_eps_zero_duhamel)
    throw Error("eps=0 requires the baseline integrator or the unsafe flag");
  if (!p.allow_off_manifold &&
      operators::sup_rho(ctx, v0) > geometry::kOnManifoldTol)
    throw Error("initial data is off-manifold; set the off-manifold flag");

  Real dt = p.auto_dt ? step_size_heuristic(v0, p) : p.dt;
  if (!(dt > 0)) throw Error("nonpositive step size");
  const long n_steps =
      std::max<long>(1, static_cast<long>(std::ceil(p.t_end / dt - 1e-9)));
  dt = p.t_end / static_cast<Real>(n_steps);

  const Real s_lead = leading_order(p);
  const Real ref_norm = spectral::grad_sobolev_norm(v0, s_lead);
  const auto t_start = std::chrono::steady_clock::now();
  auto wall_ns = [&t_start]() {
    return std::chrono::duration_cast<std::chrono::nanoseconds>(
               std::chrono::steady_clock::now() - t_start)
        .count();
  };

  Trajectory traj;
  std::vector<Real> rates;
  Field v = v0;

  traj.times.push_back(0.0);
  {
    Real rate = 0;
    traj.diagnostics.push_back(make_record(ctx, v, p, 0.0, 0, wall_ns(), &rate));
    rates.push_back(rate);
  }
  traj.snapshot_times.push_back(0.0);
  traj.snapshots.push_back(v);

  for (long step = 1; step <= n_steps; ++step) {
    int step_iters = 0;
    int substeps = 1;
    for (;;) {
      try {
        Field w = v;
        FlowParams sub = p;
        sub.dt = dt / substeps;
        step_iters = 0;
        for (int j = 0; j < substeps; ++j) {
          StepStats st;
          w = duhamel_step(ctx, w, sub, &st);
          step_iters += st.iterations;
        }
        v = std::move(w);
        break;
      } catch (const PicardDiverged&) {
        substeps *= 2;
        if (substeps > 4096) throw;
      }
    }
    const Real t = dt * static_cast<Real>(step);
    traj.times.push_back(t);

    if (p.project_each_step) project_pointwise(ctx, v);

    if (spectral::grad_sobolev_norm(v, s_lead) > p.blowup_factor * ref_norm)
      throw BlowupDetected("H^s norm exceeded " +
                           std::to_string(p.blowup_factor) + "x initial");
    cadence_tube_check(ctx, v, step, p.seed);

    const bool last = step == n_steps;
    if (step % std::max(1, p.record_every) == 0 || last) {
      Real rate = 0;
      traj.diagnostics.push_back(
          make_record(ctx, v, p, t, step_iters, wall_ns(), &rate));
      rates.push_back(rate);
    }
    if ((p.snapshot_every > 0 && step % p.snapshot_every == 0) || last) {
      traj.snapshot_times.push_back(t);
      traj.snapshots.push_back(v);
    }
  }
  backfill_energy_residuals(traj.diagnostics, rates);
  traj.final_state = v;
  traj.final_time = p.t_end;
  return traj;
}

// ------------------------------------------------------------ baseline (S^2)

namespace {

struct LLOperator {
  GridSpec grid;
  Real beta;

  static void cross_into(const Eigen::ArrayXXd& a, const Eigen::ArrayXXd& b,
                         Eigen::ArrayXXd& out) {
    out.col(0) = a.col(1) * b.col(2) - a.col(2) * b.col(1);
    out.col(1) = a.col(2) * b.col(0) - a.col(0) * b.col(2);
    out.col(2) = a.col(0) * b.col(1) - a.col(1) * b.col(0);
  }

  // s x Lap s + beta (Lap s + |grad s|^2 s)
  Field apply(const Field& s) const {
    Field lap = spectral::laplacian(s);
    Eigen::ArrayXd grad2 = Eigen::ArrayXd::Zero(s.num_points());
    for (int a = 0; a < grid.dim; ++a) {
      Field d = spectral::derivative(s, a);
      grad2 += d.values.square().rowwise().sum();
    }
    Field out(grid, 3);
    cross_into(s.values, lap.values, out.values);
    if (beta != 0.0)
      out.values += beta * (lap.values + s.values.colwise() * grad2);
    return out;
  }

  // Linearization at m applied to h.
  Field apply_jacobian(const Field& m, const Field& lap_m,
                       const std::vector<Field>& dm,
                       const Eigen::ArrayXd& grad2_m, const Field& h) const {
    Field lap_h = spectral::laplacian(h);
    Field out(grid, 3);
    Eigen::ArrayXXd tmp(h.num_points(), 3);
    cross_into(h.values, lap_m.values, out.values);
    cross_into(m.values, lap_h.values, tmp);
    out.values += tmp;
    if (beta != 0.0) {
      Eigen::ArrayXd cross_grad = Eigen::ArrayXd::Zero(h.num_points());
      for (int a = 0; a < grid.dim; ++a) {
        Field dh = spectral::derivative(h, a);
        cross_grad += (dm[a].values * dh.values).rowwise().sum();
      }
      out.values += beta * (lap_h.values + h.values.colwise() * grad2_m +
                            2.0 * (m.values.colwise() * cross_grad));
    }
    return out;
  }
};

using MatVec = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

bool gmres(const MatVec& apply, const Eigen::VectorXd& b, Eigen::VectorXd& x,
           Real tol, int max_iter, int restart) {
  const Index n = b.size();
  if (x.size() != n) x = Eigen::VectorXd::Zero(n);
  const Real bnorm = b.norm();
  if (bnorm == 0.0) {
    x.setZero();
    return true;
  }
  int total = 0;
  while (total < max_iter) {
    Eigen::VectorXd r = b - apply(x);
    const Real beta = r.norm();
    if (beta <= tol * bnorm) return true;
    const int m = std::min(restart, max_iter - total);
    Eigen::MatrixXd v(n, m + 1);
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(m + 1, m);
    Eigen::VectorXd g = Eigen::VectorXd::Zero(m + 1);
    std::vector<Real> cs(m), sn(m);
    v.col(0) = r / beta;
    g(0) = beta;
    int k = 0;
    for (; k < m; ++k) {
      Eigen::VectorXd w = apply(v.col(k));
      for (int j = 0; j <= k; ++j) {
        h(j, k) = v.col(j).dot(w);
        w -= h(j, k) * v.col(j);
      }
      h(k + 1, k) = w.norm();
      if (h(k + 1, k) > 1e-300) v.col(k + 1) = w / h(k + 1, k);
      for (int j = 0; j < k; ++j) {
        const Real tmp = cs[j] * h(j, k) + sn[j] * h(j + 1, k);
        h(j + 1, k) = -sn[j] * h(j, k) + cs[j] * h(j + 1, k);
        h(j, k) = tmp;
      }
      const Real denom = std::hypot(h(k, k), h(k + 1, k));
      cs[k] = h(k, k) / denom;
      sn[k] = h(k + 1, k) / denom;
      h(k, k) = denom;
      h(k + 1, k) = 0.0;
      g(k + 1) = -sn[k] * g(k);
      g(k) *= cs[k];
      ++total;
      if (std::abs(g(k + 1)) <= tol * bnorm) {
        ++k;
        break;
      }
    }
    Eigen::VectorXd y =
        h.topLeftCorner(k, k).triangularView<Eigen::Upper>().solve(g.head(k));
    x += v.leftCols(k) * y;
  }
  return (b - apply(x)).norm() <= tol * bnorm;
}

Field midpoint_solve(const LLOperator& op, const Field& s, Real dt) {
  const Index n = s.num_points() * 3;
  auto to_vec = [&](const Field& f) {
    return Eigen::Map<const Eigen::VectorXd>(f.values.data(), n).eval();
  };
  auto to_field = [&](const Eigen::VectorXd& x) {
    Field f(s.grid, 3);
    Eigen::Map<Eigen::VectorXd>(f.values.data(), n) = x;
    return f;
  };

  Field u = s;
  u.values += dt * op.apply(s).values;  // explicit predictor
  const Real tol = 1e-12 * std::max(1.0, spectral::l2_norm(s));

  for (int newton = 0; newton < 16; ++newton) {
    Field m(s.grid, 3);
    m.values = 0.5 * (s.values + u.values);
    Field residual(s.grid, 3);
    residual.values = u.values - s.values - dt * op.apply(m).values;
    const Real rnorm = spectral::l2_norm(residual);
    if (rnorm <= tol) return u;

    Field lap_m = spectral::laplacian(m);
    std::vector<Field> dm(s.grid.dim);
    Eigen::ArrayXd grad2_m = Eigen::ArrayXd::Zero(s.num_points());
    for (int a = 0; a < s.grid.dim; ++a) {
      dm[a] = spectral::derivative(m, a);
      grad2_m += dm[a].values.square().rowwise().sum();
    }
    MatVec apply = [&](const Eigen::VectorXd& x) {
      Field hf = to_field(x);
      Field jf = op.apply_jacobian(m, lap_m, dm, grad2_m, hf);
      Eigen::VectorXd out = x;
      out -= (0.5 * dt) * to_vec(jf);
      return out;
    };
    Eigen::VectorXd delta = Eigen::VectorXd::Zero(n);
    if (!gmres(apply, (-to_vec(residual)).eval(), delta, 1e-6, 400, 80))
      throw MidpointSolveFailed("GMRES stagnated in the midpoint solve");
    u.values += to_field(delta).values;
  }
  throw MidpointSolveFailed("Newton did not converge in the midpoint solve");
}

}  // namespace

Trajectory baseline_ll_midpoint(const OperatorContext& ctx, const Field& v0,
                                const FlowParams& p) {
  if (ctx.target().name() != "s2")
    throw Error("baseline integrator is defined for the S^2 target only");
  if (operators::sup_rho(ctx, v0) > geometry::kOnManifoldTol)
    throw Error("baseline integrator requires on-sphere data");

  const Real dt0 = p.dt;
  if (!(dt0 > 0)) throw Error("nonpositive step size");
  const long n_steps =
      std::max<long>(1, static_cast<long>(std::ceil(p.t_end / dt0 - 1e-9)));
  const Real dt = p.t_end / static_cast<Real>(n_steps);

  LLOperator op{v0.grid, p.beta};
  const auto t_start = std::chrono::steady_clock::now();
  auto wall_ns = [&t_start]() {
    return std::chrono::duration_cast<std::chrono::nanoseconds>(
               std::chrono::steady_clock::now() - t_start)
        .count();
  };

  FlowParams diag = p;
  diag.eps = 0.0;  // energy identity rate for the unregularized flow

  Trajectory traj;
  std::vector<Real> rates;
  Field v = v0;
  traj.times.push_back(0.0);
  {
    Real rate = 0;
    traj.diagnostics.push_back(
        make_record(ctx, v, diag, 0.0, 0, wall_ns(), &rate));
    rates.push_back(rate);
  }
  traj.snapshot_times.push_back(0.0);
  traj.snapshots.push_back(v);

  for (long step = 1; step <= n_steps; ++step) {
    v = midpoint_solve(op, v, dt);
    for (Index i = 0; i < v.num_points(); ++i) {
      const Real nrm = std::sqrt(v.values(i, 0) * v.values(i, 0) +
                                 v.values(i, 1) * v.values(i, 1) +
                                 v.values(i, 2) * v.values(i, 2));
      v.values.row(i) /= nrm;
    }
    const Real t = dt * static_cast<Real>(step);
    traj.times.push_back(t);
    const bool last = step == n_steps;
    if (step % std::max(1, p.record_every) == 0 || last) {
      Real rate = 0;
      traj.diagnostics.push_back(make_record(ctx, v, diag, t, 0, wall_ns(), &rate));
      rates.push_back(rate);
    }
    if ((p.snapshot_every > 0 && step % p.snapshot_every == 0) || last) {
      traj.snapshot_times.push_back(t);
      traj.snapshots.push_back(v);
    }
  }
  backfill_energy_residuals(traj.diagnostics, rates);
  traj.final_state = v;
  traj.final_time = p.t_end;
  return traj;
}

ContinuationResult epsilon_continuation(const OperatorContext& ctx,
                                        const Field& v0,
                                        const std::vector<Real>& eps_list,
                                        const FlowParams& p, int n_samples) {
  if (eps_list.empty()) throw Error("empty eps list");
  for (size_t i = 0; i + 1 < eps_list.size(); ++i)
    if (!(eps_list[i] > eps_list[i + 1]) || eps_list[i + 1] <= 0)
      throw Error("eps list must be strictly decreasing and positive");

  ContinuationResult out;
  out.eps_list = eps_list;
  out.s_prime = leading_order(p) - 1.0;
  const Real sample_dt = p.t_end / n_samples;

  for (Real eps : eps_list) {
    FlowParams q = p;
    q.eps = eps;
    Real dt = q.auto_dt ? step_size_heuristic(v0, q) : q.dt;
    const int per = std::max(1, static_cast<int>(std::ceil(sample_dt / dt - 1e-9)));
    q.dt = sample_dt / per;
    q.auto_dt = false;
    q.snapshot_every = per;
    if (q.record_every < per) q.record_every = per;
    out.runs.push_back(integrate(ctx, v0, q));
  }

  out.sample_times = out.runs.front().snapshot_times;
  for (size_t i = 0; i + 1 < out.runs.size(); ++i) {
    std::vector<Real> l2row, hsrow;
    const auto& a = out.runs[i].snapshots;
    const auto& b = out.runs[i + 1].snapshots;
    const size_t ns = std::min(a.size(), b.size());
    for (size_t j = 0; j < ns; ++j) {
      Field diff(a[j].grid, a[j].values - b[j].values);
      l2row.push_back(spectral::l2_norm(diff));
      hsrow.push_back(spectral::sobolev_norm(diff, out.s_prime));
    }
    out.l2_dist.push_back(std::move(l2row));
    out.hs_dist.push_back(std::move(hsrow));
  }
  return out;
}

}  // namespace sflab::flow
