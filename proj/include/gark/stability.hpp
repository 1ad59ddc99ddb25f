#pragma once

#include <complex>
#include <vector>

#include "gark/tableau.hpp"

namespace gark {

/// R(Z) on the multi-lambda scalar test problem, one z per partition.
/// Both algebraic forms of the rational are evaluated and cross-checked to
/// 1e-12; throws SingularMatrixError at resonant z.
std::complex<double> stability_value(const PartitionedTableau& t,
                                     const std::vector<std::complex<double>>& z);

/// Analytic limit of R as the stiff partition's z goes to infinity, other
/// partitions pinned at z_other (Schur-complement evaluation; no large-z
/// substitution). stiff_partition is 0-based; z_other lists the remaining
/// partitions' values in partition order.
std::complex<double> stability_at_stiff_limit(const PartitionedTableau& t, int stiff_partition,
                                              const std::vector<std::complex<double>>& z_other);

struct StabilityGrid {
  std::vector<double> re;       // sampled real parts, length nx
  std::vector<double> im;       // sampled imaginary parts, length ny
  std::vector<double> mag;      // |R| row-major over (im, re); NaN at singular points
  int nx = 0;
  int ny = 0;
};

/// Sweeps one partition's z over a rectangular grid with the remaining
/// partitions pinned. resolution counts per axis; resolution 1 evaluates the
/// lower corner only.
StabilityGrid scan_region(const PartitionedTableau& t, int sweep_partition,
                          const std::vector<std::complex<double>>& pinned, double re_lo,
                          double re_hi, int n_re, double im_lo, double im_hi, int n_im);

}  // namespace gark
