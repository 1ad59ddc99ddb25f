#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "gark/methods.hpp"
#include "gark/ode.hpp"

namespace gark {

using DaeFn = std::function<Vec(const Vec& x, const Vec& z)>;
using DaeJacFn = std::function<RealMatrix(const Vec& x, const Vec& z)>;

/// Semi-explicit index-1 system x' = f(x, z), 0 = g(x, z). Jacobian
/// callbacks may be left empty, in which case forward finite differences of
/// f and g are used.
struct DaeProblem {
  int dim_x = 0;
  int dim_z = 0;
  DaeFn f;
  DaeFn g;
  DaeJacFn fx, fz, gx, gz;
};

RealMatrix dae_jacobian_fx(const DaeProblem& p, const Vec& x, const Vec& z);
RealMatrix dae_jacobian_fz(const DaeProblem& p, const Vec& x, const Vec& z);
RealMatrix dae_jacobian_gx(const DaeProblem& p, const Vec& x, const Vec& z);
RealMatrix dae_jacobian_gz(const DaeProblem& p, const Vec& x, const Vec& z);

struct DaeState {
  Vec x;
  Vec z;
  double constraint_residual = 0.0;  // ||g(x,z)||_2
};

DaeState make_dae_state(const DaeProblem& p, Vec x, Vec z);

struct DaeStepResult {
  DaeState state;
  Vec increment_x;
  Vec increment_z;
  std::optional<Vec> error_estimate;  // concatenated (x, z) parts
  bool inconsistent_entry = false;    // entry residual exceeded the warning level
  StepStats stats;
};

/// One step with a two-partition method: partition 1 advances the
/// differential variables, partition 2 treats the algebraic constraint
/// linearly implicitly in the stiff limit (one d_z x d_z solve per stage).
DaeStepResult step_dae(const DaeProblem& problem, const MethodCard& method, const DaeState& state,
                       double h);

struct DaeTrajectory {
  std::vector<double> times;
  std::vector<Vec> xs;
  std::vector<Vec> zs;
  std::vector<double> g_norms;
  IntegrationStats stats;
};

struct DaeIntegrateOptions {
  bool record_trajectory = true;
};

DaeTrajectory integrate_dae_fixed(const DaeProblem& problem, const MethodCard& method, double t0,
                                  double tf, int n_steps, const DaeState& state0,
                                  const DaeIntegrateOptions& opts = {});

/// Final state only, compensated accumulation.
DaeState integrate_dae_fixed_final(const DaeProblem& problem, const MethodCard& method, double t0,
                                   double tf, int n_steps, const DaeState& state0);

/// Newton-solves g(x, z) = 0 for z at fixed x, starting from z_guess.
Vec make_consistent(const DaeProblem& problem, const Vec& x, const Vec& z_guess);

}  // namespace gark
