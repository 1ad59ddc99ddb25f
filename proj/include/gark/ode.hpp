#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "gark/linalg.hpp"
#include "gark/matrix.hpp"
#include "gark/methods.hpp"

namespace gark {

using RhsFn = std::function<Vec(double t, const Vec& y)>;
using JacFn = std::function<RealMatrix(double t, const Vec& y)>;

/// Per-partition Jacobian source: an analytic callback, forward finite
/// differences of the partition right-hand side, or a fixed matrix
/// approximation (the W-method setting).
struct JacobianProvider {
  enum class Kind { Analytic, FiniteDifference, Frozen };
  Kind kind = Kind::FiniteDifference;
  JacFn analytic;
  RealMatrix frozen;

  static JacobianProvider analytic_fn(JacFn f) {
    JacobianProvider p;
    p.kind = Kind::Analytic;
    p.analytic = std::move(f);
    return p;
  }
  static JacobianProvider finite_difference() { return JacobianProvider{}; }
  static JacobianProvider frozen_matrix(RealMatrix m) {
    JacobianProvider p;
    p.kind = Kind::Frozen;
    p.frozen = std::move(m);
    return p;
  }
};

/// Additively partitioned ODE y' = sum_m f^{m}(t, y).
struct OdeProblem {
  int dimension = 0;
  int partitions = 0;
  std::vector<RhsFn> rhs;
  std::vector<JacobianProvider> jacobian;
  /// optional per-partition df^{m}/dt for non-autonomous problems; leave the
  /// entry empty for autonomous components
  std::vector<RhsFn> time_derivative;

  bool autonomous(int q) const {
    return time_derivative.empty() || !time_derivative[static_cast<std::size_t>(q)];
  }
};

/// Evaluates partition q's Jacobian at (t, y) through its provider.
RealMatrix eval_jacobian(const OdeProblem& p, int q, double t, const Vec& y);

struct StepStats {
  long rhs_evals = 0;
  long jacobian_evals = 0;
  long lu_factorizations = 0;
  long lu_solves = 0;
  long newton_iterations = 0;

  void accumulate(const StepStats& o) {
    rhs_evals += o.rhs_evals;
    jacobian_evals += o.jacobian_evals;
    lu_factorizations += o.lu_factorizations;
    lu_solves += o.lu_solves;
    newton_iterations += o.newton_iterations;
  }
};

struct StepResult {
  Vec y_next;
  /// b-contraction of the stages, i.e. y_next - y computed without the final
  /// addition; drivers use it for compensated accumulation over long runs
  Vec increment;
  std::optional<Vec> error_estimate;  // (b - bhat) contraction, absent without bhat
  std::vector<std::vector<Vec>> stages;  // retained only when requested
  StepStats stats;
};

struct StepOptions {
  /// Weights tau^{m} distributing the time equation over partitions. Empty
  /// selects the per-process convention (each partition uses its own c^{q,q}
  /// and g^{q,q} row sums).
  std::vector<double> time_partition_weights;
  bool keep_stages = false;
};

/// One-step workhorse. Construct once per integration to reuse LU
/// factorizations across steps with unchanged matrices; ROW-class methods
/// freeze their Jacobian approximations at the first step unless
/// refresh_row_jacobian is set.
///
/// Non-autonomous terms use the per-process convention for both method
/// classes: stage i of partition q evaluates its right-hand side at
/// t_n + c^{q,q}_i h and adds h^2 g^{q,q}_i f_t. For internally consistent
/// tableaus this coincides with any time-equation partitioning (see
/// StepOptions::time_partition_weights).
class Stepper {
 public:
  Stepper(const OdeProblem& problem, const MethodCard& method, bool refresh_row_jacobian = false);

  StepResult step(double t, const Vec& y, double h, const StepOptions& opts = {});

  /// Combined-stage recurrence for two-partition methods with the shared
  /// coupling-block structure; identical result to step() up to roundoff.
  StepResult step_imex_fast(double t, const Vec& y, double h);

  const std::vector<StageRef>& ordering() const { return ordering_; }

 private:
  struct LuSlot {
    double key_scale_h = 0.0;  // h * (gamma_ii + alpha_ii)
    RealMatrix matrix_source;  // M used to build the factorization
    LuFactorization<double> lu;
    long last_use = 0;
  };

  void begin_step();
  const RealMatrix& partition_matrix(int q, double t, const Vec& y, StepStats& stats);
  const LuFactorization<double>& factor_for(int q, double scale_h, const RealMatrix& m,
                                            StepStats& stats);

  const OdeProblem* problem_;
  const MethodCard* method_;
  DerivedVectors derived_;
  std::vector<StageRef> ordering_;
  bool refresh_row_;
  std::vector<bool> matrix_needed_;
  std::vector<RealMatrix> matrices_;
  std::vector<bool> matrices_fresh_;
  std::vector<std::vector<LuSlot>> lu_slots_;  // small LRU per partition
  long lu_clock_ = 0;
};

/// Convenience single-step entry points (no cross-step reuse).
StepResult step(const OdeProblem& problem, const MethodCard& method, double t, const Vec& y,
                double h, const StepOptions& opts = {});
StepResult step_imex_fast(const OdeProblem& problem, const MethodCard& method, double t,
                          const Vec& y, double h);

struct IntegrationStats {
  long steps_accepted = 0;
  long steps_rejected = 0;
  StepStats totals;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<Vec> states;
  IntegrationStats stats;
};

struct IntegrateOptions {
  bool record_trajectory = true;
  bool refresh_row_jacobian = false;
};

Trajectory integrate_fixed(const OdeProblem& problem, const MethodCard& method, double t0,
                           double tf, int n_steps, const Vec& y0,
                           const IntegrateOptions& opts = {});

/// Final state only; compensated accumulation, no trajectory storage.
Vec integrate_fixed_final(const OdeProblem& problem, const MethodCard& method, double t0,
                          double tf, int n_steps, const Vec& y0,
                          const IntegrateOptions& opts = {});

/// Elementary integral controller around the embedded error estimate.
struct StepController {
  double atol = 1e-6;
  double rtol = 1e-3;
  double safety = 0.9;
  double ratio_min = 0.2;
  double ratio_max = 5.0;
  double h_initial = 0.0;  // 0 selects (tf - t0) / 100
};

Trajectory integrate_adaptive(const OdeProblem& problem, const MethodCard& method, double t0,
                              double tf, const Vec& y0, const StepController& ctrl,
                              const IntegrateOptions& opts = {});

}  // namespace gark
