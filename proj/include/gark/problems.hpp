#pragma once

#include <complex>

#include "gark/dae.hpp"
#include "gark/ode.hpp"

namespace gark {

/// 1-D reaction-diffusion benchmark, second-order central differences on a
/// uniform interior grid, Dirichlet boundaries folded into the edge rows.
/// Partition 1 carries the reaction terms (meant to be treated explicitly),
/// partition 2 the diffusion terms (linearly implicit). State layout is
/// [u_1..u_N, v_1..v_N].
struct BrusselatorConfig {
  int interior_points = 100;
  double a = 1.0;
  double b = 3.0;
  double diffusion = 1.0 / 50.0;
  double t_end = 10.0;
};

OdeProblem brusselator(const BrusselatorConfig& cfg);
Vec brusselator_initial_state(const BrusselatorConfig& cfg);

/// Five differential species plus one algebraic variable tied by a chemical
/// equilibrium constraint; all rate constants fixed. Square-root kinetics
/// are domain-guarded: evaluating at y2 <= 0 throws DomainError.
struct ZlaConfig {
  double k1 = 18.7;
  double k2 = 0.58;
  double k3 = 0.09;
  double k4 = 0.42;
  double big_k = 34.4;
  double kla = 3.3;
  double ks = 115.83;
  double p_co2 = 0.9;
  double henry = 737.0;
  double t_end = 180.0;
};

DaeProblem zla(const ZlaConfig& cfg = {});
DaeState zla_initial_state(const ZlaConfig& cfg = {});

/// N-partition scalar linear test problem y' = sum lambda_m y with complex
/// lambda embedded as 2x2 real rotation-scaling blocks; state is
/// [Re y, Im y].
OdeProblem dahlquist_split(const std::vector<std::complex<double>>& lambdas);
Vec dahlquist_initial_state();

/// y' = y - y^2 split as f1 = y, f2 = -y^2; closed-form solution available.
OdeProblem logistic_split();
/// Same dynamics as a single aggregated partition.
OdeProblem logistic_unpartitioned();
double logistic_exact(double y0, double t);

}  // namespace gark
