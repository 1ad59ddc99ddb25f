#include "gark/ode.hpp"

#include <cmath>

#include "gark/linalg.hpp"

namespace gark {

namespace {

constexpr double kSqrtUlp = 1.4901161193847656e-08;  // sqrt(2^-52)

}  // namespace

RealMatrix eval_jacobian(const OdeProblem& p, int q, double t, const Vec& y) {
  const auto& prov = p.jacobian.at(q);
  switch (prov.kind) {
    case JacobianProvider::Kind::Analytic:
      return prov.analytic(t, y);
    case JacobianProvider::Kind::Frozen:
      return prov.frozen;
    case JacobianProvider::Kind::FiniteDifference: {
      const int d = p.dimension;
      RealMatrix j(d, d);
      const Vec f0 = p.rhs[q](t, y);
      Vec yp = y;
      for (int c = 0; c < d; ++c) {
        const double delta = kSqrtUlp * std::max(std::abs(y[c]), 1.0);
        yp[c] = y[c] + delta;
        const Vec fc = p.rhs[q](t, yp);
        yp[c] = y[c];
        for (int r = 0; r < d; ++r) j(r, c) = (fc[r] - f0[r]) / delta;
      }
      return j;
    }
  }
  throw Error("eval_jacobian: bad provider");
}

Stepper::Stepper(const OdeProblem& problem, const MethodCard& method, bool refresh_row_jacobian)
    : problem_(&problem),
      method_(&method),
      derived_(derive_vectors(method.tableau)),
      ordering_(decoupled_ordering(method.tableau)),
      refresh_row_(refresh_row_jacobian) {
  if (problem.partitions != method.tableau.n_partitions)
    throw ShapeError("stepper: problem and method partition counts differ");
  const int n = problem.partitions;
  matrix_needed_.assign(n, false);
  matrices_.resize(n);
  matrices_fresh_.assign(n, false);
  lu_slots_.resize(n);
  for (int q = 0; q < n; ++q) {
    bool needed = method.roles[q] == PartitionRole::DiagonallyImplicit;
    for (int m = 0; m < n; ++m)
      if (method.tableau.gamma(q, m).max_abs() != 0.0) needed = true;
    matrix_needed_[q] = needed;
  }
}

void Stepper::begin_step() {
  // keep Jacobians only when they cannot change between steps: frozen
  // providers always, otherwise only ROW-class methods without refresh
  const bool row_frozen = method_->tableau.method_class == MethodClass::Row && !refresh_row_;
  for (int q = 0; q < problem_->partitions; ++q) {
    const bool frozen_provider =
        problem_->jacobian[q].kind == JacobianProvider::Kind::Frozen;
    matrices_fresh_[q] = matrices_fresh_[q] && (frozen_provider || row_frozen);
  }
}

const RealMatrix& Stepper::partition_matrix(int q, double t, const Vec& y, StepStats& stats) {
  if (matrices_fresh_[q]) return matrices_[q];
  matrices_[q] = eval_jacobian(*problem_, q, t, y);
  if (problem_->jacobian[q].kind != JacobianProvider::Kind::Frozen) ++stats.jacobian_evals;
  matrices_fresh_[q] = true;
  return matrices_[q];
}

const LuFactorization<double>& Stepper::factor_for(int q, double scale_h, const RealMatrix& m,
                                                   StepStats& stats) {
  auto& slots = lu_slots_[q];
  ++lu_clock_;
  for (auto& slot : slots) {
    if (slot.key_scale_h == scale_h && slot.matrix_source.same_shape(m) &&
        slot.matrix_source.data() == m.data()) {
      slot.last_use = lu_clock_;
      return slot.lu;
    }
  }
  const int d = m.rows();
  RealMatrix w(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) w(i, j) = -scale_h * m(i, j);
    w(i, i) += 1.0;
  }
  LuFactorization<double> lu;
  try {
    lu = lu_factor(w);
  } catch (const SingularMatrixError&) {
    throw SingularMatrixError("singular stage matrix I - h*gamma*M in partition " +
                              std::to_string(q + 1));
  }
  ++stats.lu_factorizations;
  constexpr std::size_t kMaxSlots = 4;
  if (slots.size() < kMaxSlots) {
    slots.push_back({scale_h, m, std::move(lu), lu_clock_});
    return slots.back().lu;
  }
  std::size_t oldest = 0;
  for (std::size_t i = 1; i < slots.size(); ++i)
    if (slots[i].last_use < slots[oldest].last_use) oldest = i;
  slots[oldest] = {scale_h, m, std::move(lu), lu_clock_};
  return slots[oldest].lu;
}

StepResult Stepper::step(double t, const Vec& y, double h, const StepOptions& opts) {
  const OdeProblem& p = *problem_;
  const PartitionedTableau& tb = method_->tableau;
  const int n = tb.n_partitions;
  const int d = p.dimension;
  if (static_cast<int>(y.size()) != d) throw ShapeError("step: state size mismatch");
  if (!opts.time_partition_weights.empty() &&
      static_cast<int>(opts.time_partition_weights.size()) != n)
    throw ShapeError("step: time partition weights length mismatch");

  StepResult res;
  res.stats = StepStats{};
  std::vector<std::vector<Vec>> k(n);
  for (int q = 0; q < n; ++q) k[q].assign(tb.stage_counts[q], Vec());
  begin_step();

  Vec arg(d), gsum(d);
  for (const StageRef& st : ordering_) {
    const int q = st.partition;
    const int i = st.stage;
    arg = y;
    std::fill(gsum.begin(), gsum.end(), 0.0);
    bool any_g = false;
    for (int m = 0; m < n; ++m) {
      const auto& a = tb.alpha(q, m);
      const auto& g = tb.gamma(q, m);
      const int sm = tb.stage_counts[m];
      for (int j = 0; j <= std::min(i, sm - 1); ++j) {
        if (m == q && j == i) continue;  // self terms handled implicitly
        if (k[m][j].empty()) continue;
        const double av = a(i, j);
        if (av != 0.0) axpy(av, k[m][j], arg);
        const double gv = g(i, j);
        if (gv != 0.0) {
          axpy(gv, k[m][j], gsum);
          any_g = true;
        }
      }
    }

    // stage time coefficients: per-process convention or explicit tau weights
    double ci = 0.0, gi = 0.0;
    if (opts.time_partition_weights.empty()) {
      ci = derived_.c_at(q, q)[i];
      gi = derived_.g_at(q, q)[i];
    } else {
      for (int m = 0; m < n; ++m) {
        ci += opts.time_partition_weights[m] * derived_.c_at(q, m)[i];
        gi += opts.time_partition_weights[m] * derived_.g_at(q, m)[i];
      }
    }
    const double t_stage = t + ci * h;

    const double gii = tb.gamma(q, q)(i, i);
    const double aii = tb.alpha(q, q)(i, i);
    const bool need_m = matrix_needed_[q];
    const RealMatrix* M = need_m ? &partition_matrix(q, t, y, res.stats) : nullptr;

    Vec base;
    if (aii == 0.0) {
      base = p.rhs[q](t_stage, arg);
      ++res.stats.rhs_evals;
      if (static_cast<int>(base.size()) != d)
        throw ShapeError("step: partition right-hand side returned the wrong dimension");
      for (double& v : base) v *= h;
      if (M && any_g) {
        const Vec mg = M->apply(gsum);
        axpy(h, mg, base);
      }
      if (!p.autonomous(q) && gi != 0.0) {
        const Vec ft = p.time_derivative[q](t, y);
        axpy(h * h * gi, ft, base);
      }
      if (gii != 0.0) {
        const auto& lu = factor_for(q, h * gii, *M, res.stats);
        lu.solve_in_place(base);
        ++res.stats.lu_solves;
      }
      k[q][i] = std::move(base);
    } else {
      // diagonally implicit stage: simplified Newton with the stage-frozen
      // Jacobian factorization
      const RealMatrix& J = *M;
      const auto& lu = factor_for(q, h * (gii + aii), J, res.stats);
      Vec ki(d, 0.0);
      Vec ft;
      if (!p.autonomous(q) && gi != 0.0) ft = p.time_derivative[q](t, y);
      const double newton_tol = 1e-12 * std::max(1.0, norm_inf(y));
      bool converged = false;
      Vec trial(d), residual(d);
      for (int it = 0; it < 25; ++it) {
        trial = arg;
        axpy(aii, ki, trial);
        Vec f = p.rhs[q](t_stage, trial);
        ++res.stats.rhs_evals;
        if (static_cast<int>(f.size()) != d)
          throw ShapeError("step: partition right-hand side returned the wrong dimension");
        residual = ki;
        for (int c = 0; c < d; ++c) residual[c] -= h * f[c];
        if (any_g || gii != 0.0) {
          Vec gz = gsum;
          axpy(gii, ki, gz);
          const Vec mg = J.apply(gz);
          for (int c = 0; c < d; ++c) residual[c] -= h * mg[c];
        }
        if (!ft.empty())
          for (int c = 0; c < d; ++c) residual[c] -= h * h * gi * ft[c];
        lu.solve_in_place(residual);
        ++res.stats.lu_solves;
        ++res.stats.newton_iterations;
        for (int c = 0; c < d; ++c) ki[c] -= residual[c];
        if (norm_inf(residual) <= newton_tol) {
          converged = true;
          break;
        }
      }
      if (!converged)
        throw NewtonDivergenceError("diagonally implicit stage Newton did not converge");
      k[q][i] = std::move(ki);
    }
  }

  res.increment.assign(d, 0.0);
  for (int q = 0; q < n; ++q)
    for (int i = 0; i < tb.stage_counts[q]; ++i) axpy(tb.weights[q][i], k[q][i], res.increment);
  res.y_next = y;
  axpy(1.0, res.increment, res.y_next);
  if (tb.embedded_weights) {
    Vec est(d, 0.0);
    for (int q = 0; q < n; ++q)
      for (int i = 0; i < tb.stage_counts[q]; ++i)
        axpy(tb.weights[q][i] - (*tb.embedded_weights)[q][i], k[q][i], est);
    res.error_estimate = std::move(est);
  }
  if (opts.keep_stages) res.stages = std::move(k);
  return res;
}

StepResult Stepper::step_imex_fast(double t, const Vec& y, double h) {
  const OdeProblem& p = *problem_;
  const PartitionedTableau& tb = method_->tableau;
  if (!method_->imex_case1)
    throw StructureError("step_imex_fast: method lacks the shared coupling-block structure");
  const int s = tb.stage_counts[0];
  const int d = p.dimension;
  const RealMatrix& aE = tb.alpha(0, 0);
  const RealMatrix& aI = tb.alpha(1, 1);
  const RealMatrix& gI = tb.gamma(1, 1);

  StepResult res;
  begin_step();
  const RealMatrix& M = partition_matrix(1, t, y, res.stats);

  std::vector<Vec> ke(s), ki(s), ssum(s);
  Vec argE(d), argI(d), gz(d);
  for (int i = 0; i < s; ++i) {
    argE = y;
    argI = y;
    std::fill(gz.begin(), gz.end(), 0.0);
    for (int j = 0; j < i; ++j) {
      if (aE(i, j) != 0.0) axpy(aE(i, j), ssum[j], argE);
      if (aI(i, j) != 0.0) axpy(aI(i, j), ssum[j], argI);
      if (gI(i, j) != 0.0) axpy(gI(i, j), ssum[j], gz);
    }
    const double ci = derived_.c_at(0, 0)[i];
    Vec fe = p.rhs[0](t + ci * h, argE);
    ++res.stats.rhs_evals;
    if (static_cast<int>(fe.size()) != d)
      throw ShapeError("step: partition right-hand side returned the wrong dimension");
    ke[i] = std::move(fe);
    for (double& v : ke[i]) v *= h;
    if (!p.autonomous(0)) {
      // explicit partition has zero gamma row sums; nothing to add
    }

    Vec fi = p.rhs[1](t + ci * h, argI);
    ++res.stats.rhs_evals;
    Vec rhs = std::move(fi);
    for (double& v : rhs) v *= h;
    const double gii = gI(i, i);
    axpy(gii, ke[i], gz);
    const Vec mg = M.apply(gz);
    axpy(h, mg, rhs);
    if (!p.autonomous(1)) {
      const double gi = derived_.g_at(1, 1)[i];
      if (gi != 0.0) {
        const Vec ft = p.time_derivative[1](t, y);
        axpy(h * h * gi, ft, rhs);
      }
    }
    if (gii != 0.0) {
      const auto& lu = factor_for(1, h * gii, M, res.stats);
      lu.solve_in_place(rhs);
      ++res.stats.lu_solves;
    }
    ki[i] = std::move(rhs);
    ssum[i] = ke[i];
    axpy(1.0, ki[i], ssum[i]);
  }

  res.increment.assign(d, 0.0);
  for (int i = 0; i < s; ++i) {
    axpy(tb.weights[0][i], ke[i], res.increment);
    axpy(tb.weights[1][i], ki[i], res.increment);
  }
  res.y_next = y;
  axpy(1.0, res.increment, res.y_next);
  if (tb.embedded_weights) {
    Vec est(d, 0.0);
    for (int i = 0; i < s; ++i) {
      axpy(tb.weights[0][i] - (*tb.embedded_weights)[0][i], ke[i], est);
      axpy(tb.weights[1][i] - (*tb.embedded_weights)[1][i], ki[i], est);
    }
    res.error_estimate = std::move(est);
  }
  return res;
}

StepResult step(const OdeProblem& problem, const MethodCard& method, double t, const Vec& y,
                double h, const StepOptions& opts) {
  Stepper st(problem, method);
  return st.step(t, y, h, opts);
}

StepResult step_imex_fast(const OdeProblem& problem, const MethodCard& method, double t,
                          const Vec& y, double h) {
  Stepper st(problem, method);
  return st.step_imex_fast(t, y, h);
}

namespace {

template <class OnStep>
IntegrationStats fixed_loop(const OdeProblem& problem, const MethodCard& method, double t0,
                            double tf, int n_steps, const Vec& y0, bool refresh_row,
                            OnStep&& on_step) {
  if (n_steps < 1) throw ShapeError("integrate_fixed: n_steps must be >= 1");
  Stepper stepper(problem, method, refresh_row);
  IntegrationStats stats;
  const double h = (tf - t0) / n_steps;
  CompensatedVec y(y0);
  double t = t0;
  for (int k = 0; k < n_steps; ++k) {
    // land the final step exactly on tf
    const double hk = (k + 1 == n_steps) ? tf - t : h;
    StepResult r = stepper.step(t, y.value(), hk);
    y.add_scaled(1.0, r.increment);
    t = (k + 1 == n_steps) ? tf : t0 + (k + 1) * h;
    stats.totals.accumulate(r.stats);
    ++stats.steps_accepted;
    on_step(t, y.value());
  }
  return stats;
}

}  // namespace

Trajectory integrate_fixed(const OdeProblem& problem, const MethodCard& method, double t0,
                           double tf, int n_steps, const Vec& y0, const IntegrateOptions& opts) {
  Trajectory traj;
  traj.times.push_back(t0);
  traj.states.push_back(y0);
  double t_last = t0;
  Vec y_last = y0;
  traj.stats = fixed_loop(problem, method, t0, tf, n_steps, y0, opts.refresh_row_jacobian,
                          [&](double t, const Vec& y) {
                            if (opts.record_trajectory) {
                              traj.times.push_back(t);
                              traj.states.push_back(y);
                            } else {
                              t_last = t;
                              y_last = y;
                            }
                          });
  if (!opts.record_trajectory) {
    traj.times.push_back(t_last);
    traj.states.push_back(y_last);
  }
  return traj;
}

Vec integrate_fixed_final(const OdeProblem& problem, const MethodCard& method, double t0,
                          double tf, int n_steps, const Vec& y0, const IntegrateOptions& opts) {
  Vec last = y0;
  fixed_loop(problem, method, t0, tf, n_steps, y0, opts.refresh_row_jacobian,
             [&](double, const Vec& y) { last = y; });
  return last;
}

Trajectory integrate_adaptive(const OdeProblem& problem, const MethodCard& method, double t0,
                              double tf, const Vec& y0, const StepController& ctrl,
                              const IntegrateOptions& opts) {
  Stepper stepper(problem, method, opts.refresh_row_jacobian);
  const bool embedded = method.tableau.has_embedded();
  const int p_order = embedded
                          ? std::min(method.tableau.claimed_order,
                                     method.tableau.claimed_embedded_order) + 1
                          : method.tableau.claimed_order + 1;
  Trajectory traj;
  traj.times.push_back(t0);
  traj.states.push_back(y0);

  Vec y = y0;
  double t = t0;
  double h = ctrl.h_initial > 0 ? ctrl.h_initial : (tf - t0) / 100.0;
  const double h_floor = 1e-14 * (tf - t0);

  while (t < tf) {
    if (h < h_floor) throw StepSizeUnderflowError("adaptive step size underflow");
    if (t + h > tf) h = tf - t;

    Vec y_new;
    Vec est;
    StepStats sstats;
    if (embedded) {
      StepResult r = stepper.step(t, y, h);
      sstats = r.stats;
      y_new = std::move(r.y_next);
      est = std::move(*r.error_estimate);
    } else {
      // step doubling: one full step against two half steps
      StepResult full = stepper.step(t, y, h);
      StepResult h1 = stepper.step(t, y, h / 2);
      StepResult h2 = stepper.step(t + h / 2, h1.y_next, h / 2);
      sstats = full.stats;
      sstats.accumulate(h1.stats);
      sstats.accumulate(h2.stats);
      const double denom = std::pow(2.0, method.tableau.claimed_order) - 1.0;
      est.resize(y.size());
      for (std::size_t c = 0; c < y.size(); ++c)
        est[c] = (h2.y_next[c] - full.y_next[c]) / denom;
      y_new = std::move(h2.y_next);
    }

    double err_sq = 0.0;
    for (std::size_t c = 0; c < y.size(); ++c) {
      const double sc = ctrl.atol + ctrl.rtol * std::abs(y[c]);
      const double r = est[c] / sc;
      err_sq += r * r;
    }
    const double err = std::sqrt(err_sq / static_cast<double>(y.size()));
    traj.stats.totals.accumulate(sstats);

    double factor = ctrl.safety * std::pow(std::max(err, 1e-300), -1.0 / p_order);
    factor = std::min(ctrl.ratio_max, std::max(ctrl.ratio_min, factor));
    if (err <= 1.0) {
      t += h;
      y = std::move(y_new);
      ++traj.stats.steps_accepted;
      if (opts.record_trajectory) {
        traj.times.push_back(t);
        traj.states.push_back(y);
      }
    } else {
      ++traj.stats.steps_rejected;
    }
    h *= factor;
  }
  if (!opts.record_trajectory) {
    traj.times.push_back(t);
    traj.states.push_back(y);
  }
  return traj;
}

}  // namespace gark
