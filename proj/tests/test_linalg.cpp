#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <complex>
#include <random>

#include "gark/linalg.hpp"

using namespace gark;

TEST_CASE("identity solve is exact") {
  auto f = lu_factor(RealMatrix::identity(3));
  const Vec x = f.solve({1.0, -2.0, 3.5});
  CHECK(x == Vec{1.0, -2.0, 3.5});
}

TEST_CASE("permutation matrix requires pivoting") {
  RealMatrix a = RealMatrix::from_rows({{0, 1}, {1, 0}});
  const Vec x = lu_factor(a).solve({2.0, 3.0});
  CHECK(x[0] == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(x[1] == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("shifted stage matrix, hand-computed solution") {
  // I - h*gamma*J with h=0.1, gamma=0.25, J = diag(-10,-10) has 1.25 pivots
  RealMatrix a(2, 2);
  a(0, 0) = 1.25;
  a(1, 1) = 1.25;
  const Vec x = lu_factor(a).solve({1.0, 1.0});
  CHECK(x[0] == doctest::Approx(0.8).epsilon(1e-16));
  CHECK(x[1] == doctest::Approx(0.8).epsilon(1e-16));
}

TEST_CASE("construct-then-solve recovers a known solution") {
  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  SUBCASE("diagonally dominant (no pivoting path)") {
    for (int n = 2; n <= 8; ++n) {
      for (int rep = 0; rep < 5; ++rep) {
        RealMatrix a(n, n);
        for (int i = 0; i < n; ++i) {
          for (int j = 0; j < n; ++j) a(i, j) = u(rng);
          a(i, i) += 3.0;
        }
        Vec x(n);
        for (int i = 0; i < n; ++i) x[i] = u(rng);
        const Vec got = lu_factor(a).solve(a.apply(x));
        for (int i = 0; i < n; ++i) CHECK(got[i] == doctest::Approx(x[i]).epsilon(1e-11));
      }
    }
  }
  SUBCASE("generic matrices exercise multiple row swaps") {
    for (int n = 2; n <= 8; ++n) {
      for (int rep = 0; rep < 20; ++rep) {
        RealMatrix a(n, n);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) a(i, j) = u(rng);
        Vec x(n);
        for (int i = 0; i < n; ++i) x[i] = u(rng);
        const Vec rhs = a.apply(x);
        LuFactorization<double> f;
        try {
          f = lu_factor(a);
        } catch (const SingularMatrixError&) {
          continue;  // rare with continuous entries, skip if drawn
        }
        const Vec got = f.solve(rhs);
        // residual-based bound keeps ill-conditioned draws honest
        const Vec back = a.apply(got);
        const double scale = a.max_abs() * norm_inf(got) + norm_inf(rhs);
        for (int i = 0; i < n; ++i) CHECK(std::abs(back[i] - rhs[i]) <= 1e-10 * scale);
      }
    }
  }
}

TEST_CASE("complex scalar division") {
  ComplexMatrix a(1, 1);
  a(0, 0) = {1.0, -1.0};
  const CVec x = lu_factor(a).solve({{2.0, 0.0}});
  CHECK(std::abs(x[0] - std::complex<double>(1.0, 1.0)) < 1e-15);
}

TEST_CASE("real and complex factorizations agree on real input") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const int n = 5;
  RealMatrix a(n, n);
  ComplexMatrix ac(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      a(i, j) = u(rng) + (i == j ? 2.5 : 0.0);
      ac(i, j) = a(i, j);
    }
  Vec rhs(n);
  for (int i = 0; i < n; ++i) rhs[i] = u(rng);
  CVec rhsc(n);
  for (int i = 0; i < n; ++i) rhsc[i] = rhs[i];
  const Vec xr = lu_factor(a).solve(rhs);
  const CVec xc = lu_factor(ac).solve(rhsc);
  for (int i = 0; i < n; ++i) {
    CHECK(std::abs(xc[i].imag()) < 1e-14);
    CHECK(xr[i] == doctest::Approx(xc[i].real()).epsilon(1e-13));
  }
}

TEST_CASE("singular matrix is rejected") {
  RealMatrix a = RealMatrix::from_rows({{1, 2}, {2, 4}});
  CHECK_THROWS_AS(lu_factor(a), SingularMatrixError);
  CHECK_THROWS_AS(invert_small(a), SingularMatrixError);
}

TEST_CASE("invert_small") {
  SUBCASE("identity") {
    const RealMatrix inv = invert_small(RealMatrix::identity(4));
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) CHECK(inv(i, j) == (i == j ? 1.0 : 0.0));
  }
  SUBCASE("1x1") {
    RealMatrix a(1, 1);
    a(0, 0) = 2.0;
    CHECK(invert_small(a)(0, 0) == doctest::Approx(0.5).epsilon(1e-16));
  }
  SUBCASE("lower-triangular stage coefficient block") {
    const double g = 1.0 - std::sqrt(2.0) / 2.0;
    RealMatrix beta = RealMatrix::from_rows({{g, 0.0}, {1.0 - g, g}});
    const RealMatrix inv = invert_small(beta);
    CHECK(inv(0, 0) == doctest::Approx(1.0 / g).epsilon(1e-14));
    CHECK(std::abs(inv(0, 1)) < 1e-15);
    CHECK(inv(1, 0) == doctest::Approx(-(1.0 - g) / (g * g)).epsilon(1e-14));
    CHECK(inv(1, 1) == doctest::Approx(1.0 / g).epsilon(1e-14));
    // A * A^{-1} = I to 1e-12 relative
    const RealMatrix prod = beta.matmul(inv);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) CHECK(std::abs(prod(i, j) - (i == j ? 1.0 : 0.0)) < 1e-12);
  }
}
