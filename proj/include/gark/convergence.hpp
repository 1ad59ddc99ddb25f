#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "gark/methods.hpp"
#include "gark/stability.hpp"

namespace gark {

struct LadderSpec {
  long base_steps = 10;
  int rungs = 10;
  double factor = 2.0;
};

std::vector<long> ladder_steps(const LadderSpec& spec);

/// Runs a method at a given step count and returns the final state vector
/// (differential and algebraic parts concatenated for DAEs). Must be safe to
/// call concurrently.
using FinalStateFn = std::function<Vec(const MethodCard& method, long n_steps)>;

struct ConvergenceTable {
  std::string method_name;
  std::vector<long> n_steps;
  std::vector<double> h;
  std::vector<double> error;  // two-norm against the reference at t_f; NaN on rung failure
  std::vector<std::string> rung_errors;  // failure messages, empty when the rung succeeded
  double fitted_order = 0.0;
  std::string reference_method;
  long reference_steps = 0;

  bool all_rungs_ok() const {
    for (const auto& e : rung_errors)
      if (!e.empty()) return false;
    return true;
  }
};

/// Least-squares slope of log(error) against log(h) over the asymptotic
/// tail (the finest `tail` rungs after sorting by step count).
double fit_observed_order(std::vector<double> hs, std::vector<double> errors, int tail = 5);

/// Runs one method over a ladder against a precomputed reference state.
/// Rungs execute concurrently, capped by GARK_THREADS (default: hardware).
ConvergenceTable run_ladder(const FinalStateFn& runner, const MethodCard& method,
                            const LadderSpec& spec, double t_span, const Vec& reference);

int ladder_thread_cap();

// ---- deterministic CSV output (17 significant digits) ----------------------

std::string format_g17(double v);

void write_convergence_csv(std::ostream& os, const std::vector<ConvergenceTable>& tables);
void write_trajectory_csv(std::ostream& os, const std::vector<double>& times,
                          const std::vector<Vec>& states);
void write_dae_trajectory_csv(std::ostream& os, const std::vector<double>& times,
                              const std::vector<Vec>& xs, const std::vector<Vec>& zs,
                              const std::vector<double>& g_norms);
void write_stability_csv(std::ostream& os, const StabilityGrid& grid);

}  // namespace gark
