#pragma once

#include <array>
#include <string>
#include <vector>

#include "gark/tableau.hpp"

namespace gark {

/// One evaluated order condition: lhs, target, |lhs - target| and the
/// partition indices it was instantiated with (unused slots are -1; indices
/// are 1-based to match the usual m,n,p,q notation).
struct ConditionEntry {
  std::string id;
  std::array<int, 4> indices{-1, -1, -1, -1};
  double lhs = 0.0;
  double target = 0.0;
  double residual = 0.0;
};

struct ConditionReport {
  std::vector<ConditionEntry> entries;

  double max_residual() const {
    double m = 0.0;
    for (const auto& e : entries) m = std::max(m, e.residual);
    return m;
  }
  bool passes(double tol) const { return max_residual() <= tol; }

  /// Entries whose residual exceeds tol.
  std::vector<ConditionEntry> failures(double tol) const {
    std::vector<ConditionEntry> f;
    for (const auto& e : entries)
      if (e.residual > tol) f.push_back(e);
    return f;
  }

  void merge(const ConditionReport& other) {
    entries.insert(entries.end(), other.entries.begin(), other.entries.end());
  }

  std::string to_json() const;
};

/// Default pass tolerance; gamma-root-dependent coefficient sets get 1e-8.
inline constexpr double kDefaultConditionTol = 1e-10;

/// Classical-with-exact-Jacobian condition families, orders 1..4, evaluated
/// over every index combination.
ConditionReport check_gark_ros(const PartitionedTableau& t, int order);

/// W-method condition families (arbitrary Jacobian approximations),
/// orders 1..4.
ConditionReport check_gark_row(const PartitionedTableau& t, int order);

/// Coupling conditions for a base scheme (b, alpha, gamma) paired with
/// coupling coefficients (b, alpha_bar, gamma_bar) sharing the weight vector
/// and abscissae. Verifies the abscissae prerequisite, then evaluates the
/// W-coupling conditions (order 3) and exact-Jacobian coupling conditions
/// (orders 3 and 4) up to the requested order.
ConditionReport check_internal_then_coupling_specialcase2(const Vec& b, const RealMatrix& alpha,
                                                          const RealMatrix& gamma,
                                                          const RealMatrix& alpha_bar,
                                                          const RealMatrix& gamma_bar, int order);

/// IMEX coupling conditions for a two-partition tableau whose first
/// partition is explicit. exact_jacobian selects the exact-Jacobian family;
/// special_case selects the reduced family valid under the shared-block
/// structure (verified, StructureError when violated).
ConditionReport check_imex_coupling(const PartitionedTableau& t, int order, bool exact_jacobian,
                                    bool special_case);

/// Index-1 DAE order conditions for the (differential, algebraic) partition
/// pair, z-conditions up to order_z (2..3) and x-conditions up to order_x
/// (3..4). Also reports the beta^{a,d} = beta^{a,a} simplifying-assumption
/// deviation. Partition indices are 0-based.
ConditionReport check_dae_algebraic(const PartitionedTableau& t, int diff_partition,
                                    int alg_partition, int order_x, int order_z);

/// Extra conditions damping the effect of inconsistent initial values.
ConditionReport check_inconsistent_ic(const PartitionedTableau& t, int diff_partition,
                                      int alg_partition);

}  // namespace gark
