#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "gark/methods.hpp"
#include "gark/stability.hpp"

using namespace gark;
using C = std::complex<double>;

namespace {

const double kG = 1.0 - std::sqrt(2.0) / 2.0;

// closed-form amplification of the two-stage base scheme
C ros2_closed_form(C z) { return (1.0 + (1.0 - 2.0 * kG) * z) / ((1.0 - kG * z) * (1.0 - kG * z)); }

}  // namespace

TEST_CASE("R at the origin is one for every built-in") {
  for (const auto& name : builtin_names()) {
    const auto t = builtin(name).tableau;
    const std::vector<C> z(t.n_partitions, C{0.0, 0.0});
    CHECK(stability_value(t, z) == C{1.0, 0.0});
  }
}

TEST_CASE("two-stage scheme matches its closed-form rational") {
  const auto t = builtin("ros2").tableau;
  for (double zr : {-0.1, -1.0, -10.0}) {
    const C got = stability_value(t, {C{zr, 0.0}});
    CHECK(std::abs(got - ros2_closed_form(zr)) <= 1e-13 * std::abs(ros2_closed_form(zr)));
  }
  // off-axis sample as well
  const C z{-0.5, 1.25};
  CHECK(std::abs(stability_value(t, {z}) - ros2_closed_form(z)) < 1e-13);
}

TEST_CASE("explicit trapezoidal at z = -2 sits on the stability boundary") {
  const auto t = builtin("erk-trapezoidal").tableau;
  const C r = stability_value(t, {C{-2.0, 0.0}});
  CHECK(std::abs(r - C{1.0, 0.0}) <= 1e-14);  // 1 - 2 + 2
}

TEST_CASE("stiff limits") {
  SUBCASE("L-stable schemes vanish at infinity") {
    CHECK(std::abs(stability_at_stiff_limit(builtin("ros2").tableau, 0, {})) <= 1e-12);
    CHECK(std::abs(stability_at_stiff_limit(builtin("imex-row3-2-5").tableau, 1, {C{0, 0}})) <=
          1e-12);
    CHECK(std::abs(stability_at_stiff_limit(builtin("imex-ros4-3-6").tableau, 1, {C{0, 0}})) <=
          1e-12);
    CHECK(std::abs(stability_at_stiff_limit(builtin("imex-ros22").tableau, 2,
                                            {C{0, 0}, C{0, 0}})) <= 1e-12);
  }
  SUBCASE("stiff accuracy forces a vanishing limit whenever the reduced system is regular") {
    for (const auto& name : builtin_names()) {
      const auto t = builtin(name).tableau;
      if (!is_stiffly_accurate(t, 1e-12)) continue;
      const std::vector<C> zeros(t.n_partitions - 1, C{0, 0});
      INFO(name);
      double mag = 0.0;
      try {
        mag = std::abs(stability_at_stiff_limit(t, t.n_partitions - 1, zeros));
      } catch (const SingularMatrixError&) {
        // singular reduced system (e.g. an implicit Runge-Kutta scheme with a
        // zero first beta row): the implication does not apply
        continue;
      }
      CHECK(mag <= 1e-12);
    }
  }
  SUBCASE("multimethod limit with a nonzero pinned explicit z, frozen value") {
    const C v =
        stability_at_stiff_limit(builtin("imex-ros22").tableau, 2, {C{-0.5, 0.0}, C{0, 0}});
    CHECK(std::abs(v - C{0.35355339059327373, 0.0}) <= 1e-12);
    // cross-check the analytic limit against a large-z substitution
    const C big = stability_value(builtin("imex-ros22").tableau,
                                  {C{-0.5, 0.0}, C{0, 0}, C{-1e10, 0.0}});
    CHECK(std::abs(v - big) <= 1e-6);
  }
  SUBCASE("singular beta block is reported") {
    CHECK_THROWS_AS(stability_at_stiff_limit(builtin("erk-trapezoidal").tableau, 0, {}),
                    SingularMatrixError);
  }
}

TEST_CASE("region scans") {
  SUBCASE("explicit trapezoidal lens boundary point") {
    const auto grid = scan_region(builtin("erk-trapezoidal").tableau, 0, {}, -3.0, 1.0, 5, -3.0,
                                  3.0, 3);
    REQUIRE(grid.nx == 5);
    REQUIRE(grid.ny == 3);
    // grid point (re=-2, im=0) lies exactly on |R| = 1
    const int i = 1;  // re: -3,-2,-1,0,1
    const int j = 1;  // im: -3,0,3
    CHECK(grid.mag[j * grid.nx + i] == doctest::Approx(1.0).epsilon(1e-13));
  }
  SUBCASE("single-stage implicit scheme is A-stable over the sampled half-plane") {
    PartitionedTableau t;
    t.n_partitions = 1;
    t.stage_counts = {1};
    t.alpha_blocks = {RealMatrix(1, 1)};
    RealMatrix g(1, 1);
    g(0, 0) = 1.0;
    t.gamma_blocks = {g};
    t.weights = {{1.0}};
    const auto grid = scan_region(t, 0, {}, -50.0, 0.0, 11, -20.0, 20.0, 9);
    for (double m : grid.mag) CHECK(m <= 1.0 + 1e-14);
  }
  SUBCASE("resolution one degenerates to a point evaluation") {
    const auto t = builtin("ros2").tableau;
    const auto grid = scan_region(t, 0, {}, -1.0, -1.0, 1, 0.0, 0.0, 1);
    CHECK(grid.mag.size() == 1);
    CHECK(grid.mag[0] ==
          doctest::Approx(std::abs(stability_value(t, {C{-1.0, 0.0}}))).epsilon(1e-15));
  }
}

TEST_CASE("Taylor expansion of R matches the exponential through the claimed order") {
  // Taylor coefficients via trapezoidal quadrature on a small circle
  for (const auto& name : builtin_names()) {
    const auto t = builtin(name).tableau;
    const int p = t.claimed_order;
    const double r = 1e-2;
    const int m = 32;
    std::vector<C> samples(m);
    for (int k = 0; k < m; ++k) {
      const double th = 2.0 * M_PI * k / m;
      // split z across the partitions so the summed rate is z itself
      const C z = r * C{std::cos(th), std::sin(th)} / static_cast<double>(t.n_partitions);
      samples[k] = stability_value(t, std::vector<C>(t.n_partitions, z));
    }
    double fact = 1.0;
    for (int order = 0; order <= p; ++order) {
      if (order > 0) fact *= order;
      C coeff{0.0, 0.0};
      for (int k = 0; k < m; ++k) {
        const double th = 2.0 * M_PI * k / m;
        coeff += samples[k] * C{std::cos(order * th), -std::sin(order * th)};
      }
      coeff /= static_cast<double>(m) * std::pow(r, order);
      INFO(name, " coefficient ", order);
      CHECK(std::abs(coeff - 1.0 / fact) <= 1e-6 / fact);
    }
  }
}
