#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "gark/convergence.hpp"
#include "gark/problems.hpp"

using namespace gark;

TEST_CASE("ladder step counts") {
  LadderSpec spec;
  spec.base_steps = 10;
  spec.rungs = 4;
  spec.factor = 2.0;
  CHECK(ladder_steps(spec) == std::vector<long>{10, 20, 40, 80});
  spec.factor = 1.5;
  CHECK(ladder_steps(spec) == std::vector<long>{10, 15, 23, 34});
}

TEST_CASE("order fit is invariant under ladder reversal") {
  const std::vector<double> hs{0.1, 0.05, 0.025, 0.0125, 0.00625};
  std::vector<double> errs;
  for (double h : hs) errs.push_back(3.0 * h * h * h);
  const double p = fit_observed_order(hs, errs, 5);
  CHECK(p == doctest::Approx(3.0).epsilon(1e-12));
  std::vector<double> hr(hs.rbegin(), hs.rend());
  std::vector<double> er(errs.rbegin(), errs.rend());
  CHECK(fit_observed_order(hr, er, 5) == doctest::Approx(p).epsilon(1e-14));
}

TEST_CASE("fit uses only the asymptotic tail") {
  // coarse rungs deliberately polluted; the tail alone carries the slope
  std::vector<double> hs{0.8, 0.4, 0.1, 0.05, 0.025, 0.0125, 0.00625, 0.003125};
  std::vector<double> errs{5.0, 4.9, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0};
  for (std::size_t i = 2; i < hs.size(); ++i) errs[i] = 2.0 * hs[i] * hs[i];
  CHECK(fit_observed_order(hs, errs, 5) == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("run_ladder records failures without aborting the study") {
  const FinalStateFn runner = [](const MethodCard&, long n) -> Vec {
    if (n < 20) throw DomainError("step too large for this run");
    return Vec{1.0 + 1.0 / static_cast<double>(n)};
  };
  LadderSpec spec;
  spec.base_steps = 10;
  spec.rungs = 3;
  const ConvergenceTable tab =
      run_ladder(runner, builtin("imex-row3-2-5"), spec, 1.0, Vec{1.0});
  CHECK_FALSE(tab.all_rungs_ok());
  CHECK_FALSE(tab.rung_errors[0].empty());
  CHECK(tab.rung_errors[1].empty());
  CHECK(std::isnan(tab.error[0]));
  CHECK(tab.error[1] == doctest::Approx(0.05).epsilon(1e-12));
}

TEST_CASE("csv writers format with 17 significant digits") {
  ConvergenceTable tab;
  tab.method_name = "m";
  tab.n_steps = {10};
  tab.h = {0.1};
  tab.error = {1.0 / 3.0};
  tab.rung_errors = {""};
  std::ostringstream os;
  write_convergence_csv(os, {tab});
  CHECK(os.str() == "method,n_steps,h,error\nm,10,0.10000000000000001,0.33333333333333331\n");
}
