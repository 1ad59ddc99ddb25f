#pragma once

#include <string>
#include <vector>

#include "gark/tableau.hpp"

namespace gark {

/// How the stages of one partition are treated by the stepper.
enum class PartitionRole { Explicit, DiagonallyImplicit, LinearlyImplicit };

/// A tableau packaged with stepper metadata.
struct MethodCard {
  PartitionedTableau tableau;
  std::vector<PartitionRole> roles;
  bool dae_suitable = false;
  /// Case-1 IMEX block structure detected (explicit first partition coupled
  /// to a Rosenbrock(-W) partner with shared alpha/gamma coupling blocks).
  bool imex_case1 = false;
  /// All partitions share one weight vector; enables the combined-stage form.
  bool shared_b = false;
  std::string notes;
};

/// Built-in coefficient sets. Known names:
///   ros2, imex-ros22, imex-row3-2-4, imex-row3-2-5, imex-ros4-3-6,
///   erk-trapezoidal, irk-trapezoidal
MethodCard builtin(const std::string& name);

std::vector<std::string> builtin_names();

/// The gamma parameter of IMEX-ROW3(2)4: middle root of
/// 6 g^3 - 18 g^2 + 9 g - 1 = 0, refined by Newton from 0.44.
double row324_gamma();

/// Builds the two-partition IMEX tableau in which the explicit scheme's
/// alpha couples to both stage sets and the Rosenbrock partner's alpha/gamma
/// do likewise. Requires equal stage counts; when shared_b is set the two
/// weight vectors must coincide.
PartitionedTableau compose_imex_special_case(const PartitionedTableau& erk,
                                             const PartitionedTableau& rosw, bool shared_b);

/// Wraps a bare tableau in a MethodCard, inferring roles and IMEX structure.
MethodCard make_card(PartitionedTableau t);

/// Reduces a method to the sub-method over the given partitions (0-based),
/// preserving role metadata. Used e.g. to run a multimethod with one of its
/// right-hand sides identically zero.
MethodCard select_card(const MethodCard& card, const std::vector<int>& parts);

/// Two-partition (explicit, linearly implicit) view of a method: identity
/// for two-partition cards; multimethods drop their middle partitions
/// (valid when the dropped right-hand sides are zero).
MethodCard two_way_imex_form(const MethodCard& card);

}  // namespace gark
