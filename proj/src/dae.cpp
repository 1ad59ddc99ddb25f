#include "gark/dae.hpp"

#include <cmath>

#include "gark/linalg.hpp"

namespace gark {

namespace {

constexpr double kSqrtUlp = 1.4901161193847656e-08;
constexpr double kInconsistencyWarnLevel = 1e-6;

RealMatrix fd_jacobian(const DaeFn& fn, const Vec& x, const Vec& z, bool wrt_x, int out_dim) {
  const Vec f0 = fn(x, z);
  const Vec& v = wrt_x ? x : z;
  RealMatrix j(out_dim, static_cast<int>(v.size()));
  Vec xp = x, zp = z;
  Vec& vp = wrt_x ? xp : zp;
  for (std::size_t c = 0; c < v.size(); ++c) {
    const double delta = kSqrtUlp * std::max(std::abs(v[c]), 1.0);
    vp[c] = v[c] + delta;
    const Vec fc = fn(xp, zp);
    vp[c] = v[c];
    for (int r = 0; r < out_dim; ++r) j(r, static_cast<int>(c)) = (fc[r] - f0[r]) / delta;
  }
  return j;
}

/// Reusable one-step engine: the stage ordering, role checks, and work
/// buffers survive across steps of a fixed-step sweep.
class DaeStepper {
 public:
  DaeStepper(const DaeProblem& problem, const MethodCard& method)
      : p_(&problem), tb_(&method.tableau) {
    if (tb_->n_partitions != 2)
      throw ShapeError("step_dae: expects a two-partition (differential, algebraic) method");
    if (method.roles[0] == PartitionRole::DiagonallyImplicit)
      throw StructureError(
          "step_dae: diagonally implicit differential partitions are not supported");
    sd_ = tb_->stage_counts[0];
    sa_ = tb_->stage_counts[1];
    dx_ = problem.dim_x;
    dz_ = problem.dim_z;
    ordering_ = decoupled_ordering(*tb_);
    diff_implicit_ =
        tb_->gamma(0, 0).max_abs() != 0.0 || tb_->gamma(0, 1).max_abs() != 0.0;
    for (int i = 0; i < sa_; ++i)
      if (tb_->gamma(1, 1)(i, i) <= 0.0)
        throw StructureError("step_dae: algebraic stages need positive diagonal gamma");
    k_.assign(sd_, Vec(dx_));
    l_.assign(sa_, Vec(dz_));
    xa_.resize(dx_);
    za_.resize(dz_);
    gsx_.resize(dx_);
    gsz_.resize(dz_);
    rhs_.resize(dz_);
  }

  void step_increments(const Vec& x0, const Vec& z0, double h, Vec& inc_x, Vec& inc_z,
                       StepStats& stats) {
    stage_sweep(x0, z0, h, stats);
    inc_x.assign(dx_, 0.0);
    inc_z.assign(dz_, 0.0);
    for (int i = 0; i < sd_; ++i) axpy(tb_->weights[0][i], k_[i], inc_x);
    for (int i = 0; i < sa_; ++i) axpy(tb_->weights[1][i], l_[i], inc_z);
  }

  DaeStepResult step(const DaeState& state, double h) {
    DaeStepResult res;
    res.inconsistent_entry = state.constraint_residual > kInconsistencyWarnLevel;
    const Vec& x0 = state.x;
    const Vec& z0 = state.z;

    stage_sweep(x0, z0, h, res.stats);

    res.increment_x.assign(dx_, 0.0);
    res.increment_z.assign(dz_, 0.0);
    for (int i = 0; i < sd_; ++i) axpy(tb_->weights[0][i], k_[i], res.increment_x);
    for (int i = 0; i < sa_; ++i) axpy(tb_->weights[1][i], l_[i], res.increment_z);

    Vec x1 = x0, z1 = z0;
    axpy(1.0, res.increment_x, x1);
    axpy(1.0, res.increment_z, z1);
    res.state = make_dae_state(*p_, std::move(x1), std::move(z1));

    if (tb_->embedded_weights) {
      Vec est(dx_ + dz_, 0.0);
      for (int i = 0; i < sd_; ++i) {
        const double w = tb_->weights[0][i] - (*tb_->embedded_weights)[0][i];
        for (int c = 0; c < dx_; ++c) est[c] += w * k_[i][c];
      }
      for (int i = 0; i < sa_; ++i) {
        const double w = tb_->weights[1][i] - (*tb_->embedded_weights)[1][i];
        for (int c = 0; c < dz_; ++c) est[dx_ + c] += w * l_[i][c];
      }
      res.error_estimate = std::move(est);
    }
    return res;
  }

 private:
  void stage_sweep(const Vec& x0, const Vec& z0, double h, StepStats& stats) {
    gz0_ = dae_jacobian_gz(*p_, x0, z0);
    gx0_ = dae_jacobian_gx(*p_, x0, z0);
    stats.jacobian_evals += 2;
    if (diff_implicit_) {
      fx0_ = dae_jacobian_fx(*p_, x0, z0);
      fz0_ = dae_jacobian_fz(*p_, x0, z0);
      stats.jacobian_evals += 2;
    }
    alg_keys_.clear();
    diff_keys_.clear();
    for (const StageRef& st : ordering_) {
      if (st.partition == 0) {
        differential_stage(st.stage, x0, z0, h, stats);
      } else {
        algebraic_stage(st.stage, x0, z0, h, stats);
      }
    }
  }

  void differential_stage(int i, const Vec& x0, const Vec& z0, double h, StepStats& stats) {
    const RealMatrix& add = tb_->alpha(0, 0);
    const RealMatrix& ada = tb_->alpha(0, 1);
    const RealMatrix& gdd = tb_->gamma(0, 0);
    const RealMatrix& gda = tb_->gamma(0, 1);
    xa_ = x0;
    za_ = z0;
    bool any_gx = false, any_gz = false;
    if (diff_implicit_) {
      std::fill(gsx_.begin(), gsx_.end(), 0.0);
      std::fill(gsz_.begin(), gsz_.end(), 0.0);
    }
    // nonzero coefficients can only reference stages the ordering has
    // already produced (validated lower-triangular structure)
    for (int j = 0; j < std::min(i, sd_); ++j) {
      if (add(i, j) != 0.0) axpy(add(i, j), k_[j], xa_);
      if (diff_implicit_ && gdd(i, j) != 0.0) {
        axpy(gdd(i, j), k_[j], gsx_);
        any_gx = true;
      }
    }
    for (int j = 0; j < std::min(i + 1, sa_); ++j) {
      if (ada(i, j) != 0.0) axpy(ada(i, j), l_[j], za_);
      if (diff_implicit_ && gda(i, j) != 0.0) {
        axpy(gda(i, j), l_[j], gsz_);
        any_gz = true;
      }
    }
    Vec ki = p_->f(xa_, za_);
    ++stats.rhs_evals;
    if (static_cast<int>(ki.size()) != dx_)
      throw ShapeError("step_dae: f returned the wrong dimension");
    for (double& v : ki) v *= h;
    if (any_gx) {
      const Vec m = fx0_.apply(gsx_);
      axpy(h, m, ki);
    }
    if (any_gz) {
      const Vec m = fz0_.apply(gsz_);
      axpy(h, m, ki);
    }
    const double gii = gdd(i, i);
    if (gii != 0.0) {
      diff_factor(gii, h, stats).solve_in_place(ki);
      ++stats.lu_solves;
    }
    k_[i] = std::move(ki);
  }

  void algebraic_stage(int i, const Vec& x0, const Vec& z0, double h, StepStats& stats) {
    (void)h;  // the limit stage equation has no step-size factor
    const RealMatrix& aad = tb_->alpha(1, 0);
    const RealMatrix& aaa = tb_->alpha(1, 1);
    const RealMatrix& gad = tb_->gamma(1, 0);
    const RealMatrix& gaa = tb_->gamma(1, 1);
    xa_ = x0;
    za_ = z0;
    std::fill(gsx_.begin(), gsx_.end(), 0.0);
    std::fill(gsz_.begin(), gsz_.end(), 0.0);
    for (int j = 0; j < std::min(i + 1, sd_); ++j) {
      if (aad(i, j) != 0.0) axpy(aad(i, j), k_[j], xa_);
      if (gad(i, j) != 0.0) axpy(gad(i, j), k_[j], gsx_);
    }
    for (int j = 0; j < i; ++j) {
      if (aaa(i, j) != 0.0) axpy(aaa(i, j), l_[j], za_);
      if (gaa(i, j) != 0.0) axpy(gaa(i, j), l_[j], gsz_);
    }
    rhs_ = p_->g(xa_, za_);
    ++stats.rhs_evals;
    if (static_cast<int>(rhs_.size()) != dz_)
      throw ShapeError("step_dae: g returned the wrong dimension");
    for (double& v : rhs_) v = -v;
    for (int r = 0; r < dz_; ++r) {
      double acc = 0.0;
      for (int c = 0; c < dx_; ++c) acc += gx0_(r, c) * gsx_[c];
      for (int c = 0; c < dz_; ++c) acc += gz0_(r, c) * gsz_[c];
      rhs_[r] -= acc;
    }
    const double gii = gaa(i, i);
    if (dz_ == 1) {
      const double m = gii * gz0_(0, 0);
      if (std::abs(m) < 1e-14) throw SingularMatrixError("step_dae: g_z singular at the current state");
      l_[i][0] = rhs_[0] / m;
    } else {
      alg_factor(gii, stats).solve_in_place(rhs_);
      ++stats.lu_solves;
      l_[i] = rhs_;
    }
  }

  const LuFactorization<double>& alg_factor(double gii, StepStats& stats) {
    for (std::size_t s = 0; s < alg_keys_.size(); ++s)
      if (alg_keys_[s] == gii) return alg_lus_[s];
    RealMatrix m(dz_, dz_);
    for (int i = 0; i < dz_; ++i)
      for (int j = 0; j < dz_; ++j) m(i, j) = gii * gz0_(i, j);
    LuFactorization<double> lu;
    try {
      lu = lu_factor(m);
    } catch (const SingularMatrixError&) {
      throw SingularMatrixError("step_dae: g_z singular at the current state");
    }
    ++stats.lu_factorizations;
    alg_keys_.push_back(gii);
    if (alg_lus_.size() < alg_keys_.size()) alg_lus_.push_back(std::move(lu));
    else alg_lus_[alg_keys_.size() - 1] = std::move(lu);
    return alg_lus_[alg_keys_.size() - 1];
  }

  const LuFactorization<double>& diff_factor(double gii, double h, StepStats& stats) {
    for (std::size_t s = 0; s < diff_keys_.size(); ++s)
      if (diff_keys_[s] == h * gii) return diff_lus_[s];
    RealMatrix m(dx_, dx_);
    for (int i = 0; i < dx_; ++i) {
      for (int j = 0; j < dx_; ++j) m(i, j) = -h * gii * fx0_(i, j);
      m(i, i) += 1.0;
    }
    LuFactorization<double> lu = lu_factor(m);
    ++stats.lu_factorizations;
    diff_keys_.push_back(h * gii);
    if (diff_lus_.size() < diff_keys_.size()) diff_lus_.push_back(std::move(lu));
    else diff_lus_[diff_keys_.size() - 1] = std::move(lu);
    return diff_lus_[diff_keys_.size() - 1];
  }

  const DaeProblem* p_;
  const PartitionedTableau* tb_;
  int sd_ = 0, sa_ = 0, dx_ = 0, dz_ = 0;
  bool diff_implicit_ = false;
  std::vector<StageRef> ordering_;
  std::vector<Vec> k_, l_;
  Vec xa_, za_, gsx_, gsz_, rhs_;
  RealMatrix fx0_, fz0_, gx0_, gz0_;
  std::vector<double> alg_keys_, diff_keys_;
  std::vector<LuFactorization<double>> alg_lus_, diff_lus_;
};

}  // namespace

RealMatrix dae_jacobian_fx(const DaeProblem& p, const Vec& x, const Vec& z) {
  return p.fx ? p.fx(x, z) : fd_jacobian(p.f, x, z, true, p.dim_x);
}
RealMatrix dae_jacobian_fz(const DaeProblem& p, const Vec& x, const Vec& z) {
  return p.fz ? p.fz(x, z) : fd_jacobian(p.f, x, z, false, p.dim_x);
}
RealMatrix dae_jacobian_gx(const DaeProblem& p, const Vec& x, const Vec& z) {
  return p.gx ? p.gx(x, z) : fd_jacobian(p.g, x, z, true, p.dim_z);
}
RealMatrix dae_jacobian_gz(const DaeProblem& p, const Vec& x, const Vec& z) {
  return p.gz ? p.gz(x, z) : fd_jacobian(p.g, x, z, false, p.dim_z);
}

DaeState make_dae_state(const DaeProblem& p, Vec x, Vec z) {
  DaeState s;
  s.constraint_residual = norm2(p.g(x, z));
  s.x = std::move(x);
  s.z = std::move(z);
  return s;
}

DaeStepResult step_dae(const DaeProblem& problem, const MethodCard& method, const DaeState& state,
                       double h) {
  DaeStepper stepper(problem, method);
  return stepper.step(state, h);
}

namespace {

template <class OnStep>
IntegrationStats dae_fixed_loop(const DaeProblem& problem, const MethodCard& method, double t0,
                                double tf, int n_steps, const DaeState& state0, OnStep&& on_step) {
  if (n_steps < 1) throw ShapeError("integrate_dae_fixed: n_steps must be >= 1");
  DaeStepper stepper(problem, method);
  IntegrationStats stats;
  const double h = (tf - t0) / n_steps;
  CompensatedVec x(state0.x), z(state0.z);
  DaeState cur = state0;
  Vec inc_x, inc_z;
  double t = t0;
  for (int kstep = 0; kstep < n_steps; ++kstep) {
    const double hk = (kstep + 1 == n_steps) ? tf - t : h;
    stepper.step_increments(cur.x, cur.z, hk, inc_x, inc_z, stats.totals);
    x.add_scaled(1.0, inc_x);
    z.add_scaled(1.0, inc_z);
    cur.x = x.value();
    cur.z = z.value();
    cur.constraint_residual = norm2(problem.g(cur.x, cur.z));
    t = (kstep + 1 == n_steps) ? tf : t0 + (kstep + 1) * h;
    ++stats.steps_accepted;
    on_step(t, cur);
  }
  return stats;
}

}  // namespace

DaeTrajectory integrate_dae_fixed(const DaeProblem& problem, const MethodCard& method, double t0,
                                  double tf, int n_steps, const DaeState& state0,
                                  const DaeIntegrateOptions& opts) {
  DaeTrajectory traj;
  traj.times.push_back(t0);
  traj.xs.push_back(state0.x);
  traj.zs.push_back(state0.z);
  traj.g_norms.push_back(state0.constraint_residual);
  DaeState last = state0;
  double t_last = t0;
  traj.stats = dae_fixed_loop(problem, method, t0, tf, n_steps, state0,
                              [&](double t, const DaeState& s) {
                                if (opts.record_trajectory) {
                                  traj.times.push_back(t);
                                  traj.xs.push_back(s.x);
                                  traj.zs.push_back(s.z);
                                  traj.g_norms.push_back(s.constraint_residual);
                                } else {
                                  t_last = t;
                                  last = s;
                                }
                              });
  if (!opts.record_trajectory) {
    traj.times.push_back(t_last);
    traj.xs.push_back(last.x);
    traj.zs.push_back(last.z);
    traj.g_norms.push_back(last.constraint_residual);
  }
  return traj;
}

DaeState integrate_dae_fixed_final(const DaeProblem& problem, const MethodCard& method, double t0,
                                   double tf, int n_steps, const DaeState& state0) {
  DaeState last = state0;
  dae_fixed_loop(problem, method, t0, tf, n_steps, state0,
                 [&](double, const DaeState& s) { last = s; });
  return last;
}

Vec make_consistent(const DaeProblem& problem, const Vec& x, const Vec& z_guess) {
  Vec z = z_guess;
  for (int it = 0; it < 50; ++it) {
    Vec gv = problem.g(x, z);
    if (norm2(gv) <= 1e-12) return z;
    const RealMatrix gz = dae_jacobian_gz(problem, x, z);
    LuFactorization<double> lu;
    try {
      lu = lu_factor(gz);
    } catch (const SingularMatrixError&) {
      throw SingularMatrixError("make_consistent: g_z singular near the iterate");
    }
    lu.solve_in_place(gv);
    axpy(-1.0, gv, z);
  }
  throw NewtonDivergenceError("make_consistent: Newton did not reach ||g|| <= 1e-12");
}

}  // namespace gark
