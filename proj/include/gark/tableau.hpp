#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gark/matrix.hpp"

namespace gark {

/// Whether a method's order claims assume exact Jacobians (ROS) or hold for
/// arbitrary Jacobian approximations (ROW).
enum class MethodClass { Ros, Row };

/// Strict demands strictly lower triangular alpha blocks everywhere.
/// Decoupled relaxes the coupling blocks to lower triangular (and permits a
/// diagonally implicit self block), as long as a stage evaluation order
/// exists in which every stage is implicit only in its own unknown.
enum class CouplingMode { Strict, Decoupled };

/// Partitioned Rosenbrock(-W) tableau: per-partition stage counts, NxN
/// blocks of alpha/gamma coefficients, weights b (optionally embedded bhat).
///
/// Immutable by convention after construction; safe to share across threads.
struct PartitionedTableau {
  std::string name;
  MethodClass method_class = MethodClass::Ros;
  CouplingMode coupling_mode = CouplingMode::Strict;
  int n_partitions = 0;
  std::vector<int> stage_counts;
  // blocks are stored row-major over (q, m): index q * N + m
  std::vector<RealMatrix> alpha_blocks;
  std::vector<RealMatrix> gamma_blocks;
  std::vector<Vec> weights;
  std::optional<std::vector<Vec>> embedded_weights;
  int claimed_order = 0;
  int claimed_embedded_order = 0;

  const RealMatrix& alpha(int q, int m) const { return alpha_blocks[q * n_partitions + m]; }
  const RealMatrix& gamma(int q, int m) const { return gamma_blocks[q * n_partitions + m]; }
  RealMatrix beta(int q, int m) const { return alpha(q, m) + gamma(q, m); }

  int total_stages() const {
    int s = 0;
    for (int v : stage_counts) s += v;
    return s;
  }

  bool has_embedded() const { return embedded_weights.has_value(); }

  /// Copy with b replaced by bhat (used to check embedded-order claims).
  PartitionedTableau embedded_variant() const;
};

/// One structural violation, with the offending block and entry when known.
struct Violation {
  std::string message;
  int block_q = -1;
  int block_m = -1;
  int row = -1;
  int col = -1;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool valid() const { return violations.empty(); }
};

/// Row sums and beta blocks derived from a tableau (terminal vectors).
struct DerivedVectors {
  int n_partitions = 0;
  std::vector<RealMatrix> beta_blocks;       // (m,n) -> alpha + gamma
  std::vector<Vec> c;                        // (m,n) -> alpha row sums
  std::vector<Vec> g;                        // (m,n) -> gamma row sums
  std::vector<Vec> e;                        // (m,n) -> beta row sums

  const RealMatrix& beta(int m, int n) const { return beta_blocks[m * n_partitions + n]; }
  const Vec& c_at(int m, int n) const { return c[m * n_partitions + n]; }
  const Vec& g_at(int m, int n) const { return g[m * n_partitions + n]; }
  const Vec& e_at(int m, int n) const { return e[m * n_partitions + n]; }
};

/// Global (assembled) coefficient matrices, s = sum of stage counts.
struct GlobalTableau {
  RealMatrix a;
  RealMatrix g;
  RealMatrix b_mat;  // b_mat = a + g
  Vec b;
  std::vector<int> offsets;  // partition start indices, size N+1
};

/// Stage identifier: (partition, stage index within partition), 0-based.
struct StageRef {
  int partition = 0;
  int stage = 0;
  bool operator==(const StageRef&) const = default;
};

ValidationReport validate(const PartitionedTableau& t);
DerivedVectors derive_vectors(const PartitionedTableau& t);
bool is_internally_consistent(const PartitionedTableau& t, double tol = 1e-12);
bool is_stiffly_accurate(const PartitionedTableau& t, double tol = 1e-12);
GlobalTableau assemble_global(const PartitionedTableau& t);

/// Stage evaluation order in which every stage's linear system involves only
/// its own unknown and previously computed stages. Prefers the round-robin
/// sweep k_i^{1},...,k_i^{N} with i ascending; falls back to a topological
/// sort of the stage dependency graph. Throws NotDecoupledError when no
/// order exists.
std::vector<StageRef> decoupled_ordering(const PartitionedTableau& t);

/// Sub-tableau over the given partitions (in the given order). Equivalent to
/// running the full method with the dropped partitions' right-hand sides
/// identically zero.
PartitionedTableau select_partitions(const PartitionedTableau& t, const std::vector<int>& parts);

/// JSON schema round trip. Numbers are serialized as decimal strings with 17
/// significant digits so binary doubles survive the round trip.
std::string tableau_to_json(const PartitionedTableau& t);
PartitionedTableau tableau_from_json(const std::string& json_text);

}  // namespace gark
