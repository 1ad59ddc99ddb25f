#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "gark/problems.hpp"
#include "gark/stability.hpp"

using namespace gark;

TEST_CASE("reaction-diffusion initial profile peaks at the quarter point") {
  BrusselatorConfig cfg;
  cfg.interior_points = 3;  // dx = 1/4, first grid point at x = 1/4
  const Vec y0 = brusselator_initial_state(cfg);
  CHECK(y0[0] == doctest::Approx(2.0).epsilon(1e-15));  // 1 + sin(pi/2)
  CHECK(y0[3] == 3.0);
}

TEST_CASE("boundary values are folded into the edge diffusion rows") {
  BrusselatorConfig cfg;
  cfg.interior_points = 4;
  const OdeProblem p = brusselator(cfg);
  const double c = cfg.diffusion * 25.0;  // 1/dx^2 = 25
  Vec y(8, 0.0);                          // zero state isolates the boundary terms
  const Vec fd = p.rhs[1](0.0, y);
  CHECK(fd[0] == doctest::Approx(c * 1.0).epsilon(1e-14));  // u left boundary
  CHECK(fd[3] == doctest::Approx(c * 1.0).epsilon(1e-14));  // u right boundary
  CHECK(fd[4] == doctest::Approx(c * 3.0).epsilon(1e-14));  // v left boundary
  CHECK(fd[7] == doctest::Approx(c * 3.0).epsilon(1e-14));  // v right boundary
  CHECK(fd[1] == 0.0);                                      // interior rows see no boundary
}

TEST_CASE("the reaction terms vanish at the steady state (1, 3)") {
  BrusselatorConfig cfg;
  cfg.interior_points = 5;
  const OdeProblem p = brusselator(cfg);
  Vec y(10);
  for (int i = 0; i < 5; ++i) {
    y[i] = 1.0;
    y[5 + i] = 3.0;
  }
  const Vec fr = p.rhs[0](0.0, y);
  for (double v : fr) CHECK(v == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("the diffusion Jacobian is the exact second-difference stencil") {
  BrusselatorConfig cfg;
  cfg.interior_points = 6;
  const OdeProblem p = brusselator(cfg);
  const double c = cfg.diffusion * 49.0;  // 1/dx^2 = 49
  const RealMatrix j = eval_jacobian(p, 1, 0.0, brusselator_initial_state(cfg));
  for (int blk = 0; blk < 2; ++blk) {
    const int o = blk * 6;
    for (int i = 0; i < 6; ++i)
      for (int k = 0; k < 6; ++k) {
        const double expect = (i == k) ? -2.0 * c : (std::abs(i - k) == 1 ? c : 0.0);
        CHECK(j(o + i, o + k) == doctest::Approx(expect).epsilon(1e-14));
      }
  }
}

TEST_CASE("finite differences agree with the analytic Jacobians on both benchmarks") {
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> u(0.1, 1.0);

  SUBCASE("reaction-diffusion") {
    BrusselatorConfig cfg;
    cfg.interior_points = 5;
    const OdeProblem p = brusselator(cfg);
    OdeProblem fd = p;
    fd.jacobian[0] = JacobianProvider::finite_difference();
    fd.jacobian[1] = JacobianProvider::finite_difference();
    for (int rep = 0; rep < 5; ++rep) {
      Vec y(p.dimension);
      for (auto& v : y) v = 3.0 * u(rng);
      for (int q = 0; q < 2; ++q) {
        const RealMatrix ja = eval_jacobian(p, q, 0.0, y);
        const RealMatrix jf = eval_jacobian(fd, q, 0.0, y);
        const double scale = std::max(1.0, ja.max_abs());
        for (int i = 0; i < ja.rows(); ++i)
          for (int k = 0; k < ja.cols(); ++k)
            CHECK(std::abs(jf(i, k) - ja(i, k)) <= 1e-6 * scale);
      }
    }
  }
  SUBCASE("kinetics") {
    const DaeProblem p = zla();
    DaeProblem fd = p;
    fd.fx = nullptr;
    fd.fz = nullptr;
    fd.gx = nullptr;
    fd.gz = nullptr;
    for (int rep = 0; rep < 5; ++rep) {
      Vec x(5);
      for (auto& v : x) v = u(rng);
      Vec z{u(rng)};
      const std::pair<RealMatrix, RealMatrix> pairs[] = {
          {dae_jacobian_fx(p, x, z), dae_jacobian_fx(fd, x, z)},
          {dae_jacobian_fz(p, x, z), dae_jacobian_fz(fd, x, z)},
          {dae_jacobian_gx(p, x, z), dae_jacobian_gx(fd, x, z)},
          {dae_jacobian_gz(p, x, z), dae_jacobian_gz(fd, x, z)},
      };
      for (const auto& [ja, jf] : pairs) {
        const double scale = std::max(1.0, ja.max_abs());
        for (int i = 0; i < ja.rows(); ++i)
          for (int k = 0; k < ja.cols(); ++k)
            CHECK(std::abs(jf(i, k) - ja(i, k)) <= 1e-6 * scale);
      }
    }
  }
}

TEST_CASE("kinetics invariants") {
  const DaeProblem p = zla();
  SUBCASE("consistent start") {
    const DaeState s = zla_initial_state();
    CHECK(p.g(s.x, s.z)[0] == 0.0);
    CHECK(s.z[0] == doctest::Approx(115.83 * 0.444 * 0.007).epsilon(1e-16));
  }
  SUBCASE("the gas inflow term vanishes at the equilibrium partial pressure") {
    ZlaConfig cfg;
    Vec x{0.3, cfg.p_co2 / cfg.henry, 0.1, 0.05, 0.02};
    Vec z{0.5};
    ZlaConfig no_inflow = cfg;
    no_inflow.kla = 0.0;
    const Vec with = p.f(x, z);
    const Vec without = zla(no_inflow).f(x, z);
    CHECK(with[1] == doctest::Approx(without[1]).epsilon(1e-15));
  }
  SUBCASE("square-root kinetics are domain guarded") {
    Vec x{0.3, -1e-9, 0.1, 0.05, 0.02};
    Vec z{0.5};
    CHECK_THROWS_AS(p.f(x, z), DomainError);
    CHECK_THROWS_AS(dae_jacobian_fx(p, x, z), DomainError);
  }
}

TEST_CASE("logistic closed form") {
  CHECK(logistic_exact(0.5, std::log(2.0)) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(logistic_exact(0.0, 3.0) == 0.0);
  CHECK(logistic_exact(1.0, 3.0) == doctest::Approx(1.0).epsilon(1e-15));
  // equilibria of the split right-hand side
  const OdeProblem p = logistic_split();
  CHECK(p.rhs[0](0.0, {1.0})[0] + p.rhs[1](0.0, {1.0})[0] == 0.0);
  CHECK(p.rhs[0](0.0, {0.0})[0] + p.rhs[1](0.0, {0.0})[0] == 0.0);
}

TEST_CASE("scalar linear flow matches the exponential of the summed rates") {
  const std::vector<std::complex<double>> lams{{-0.7, 0.4}, {-0.9, -0.1}};
  const OdeProblem p = dahlquist_split(lams);
  const Vec yf =
      integrate_fixed_final(p, builtin("imex-ros4-3-6"), 0.0, 1.0, 2000, dahlquist_initial_state());
  const std::complex<double> expect = std::exp(lams[0] + lams[1]);
  CHECK(std::abs(std::complex<double>(yf[0], yf[1]) - expect) < 1e-10);
}

TEST_CASE("zero rates give the identity flow") {
  const OdeProblem p = dahlquist_split({{0.0, 0.0}, {0.0, 0.0}});
  const Vec yf =
      integrate_fixed_final(p, builtin("imex-row3-2-5"), 0.0, 3.0, 7, dahlquist_initial_state());
  CHECK(yf[0] == 1.0);
  CHECK(yf[1] == 0.0);
}
