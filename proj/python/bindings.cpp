// Python bindings for the core operations: built-in methods, order-condition
// checking, stability evaluation, and the benchmark integrations.

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <complex>

#include "gark/convergence.hpp"
#include "gark/dae.hpp"
#include "gark/methods.hpp"
#include "gark/ode.hpp"
#include "gark/order_conditions.hpp"
#include "gark/problems.hpp"
#include "gark/stability.hpp"

namespace py = pybind11;
using C = std::complex<double>;

namespace {

gark::MethodCard resolve(const std::string& spec) {
  for (const auto& n : gark::builtin_names())
    if (n == spec) return gark::builtin(spec);
  // otherwise treat the argument as tableau JSON text
  gark::PartitionedTableau t = gark::tableau_from_json(spec);
  return gark::make_card(std::move(t));
}

struct NamedProblem {
  gark::FinalStateFn runner;
  double t_final;
};

NamedProblem named_problem(const std::string& problem, double t_final, int grid) {
  if (problem == "brusselator") {
    gark::BrusselatorConfig cfg;
    cfg.interior_points = grid;
    const double tf = t_final > 0 ? t_final : cfg.t_end;
    auto prob = std::make_shared<gark::OdeProblem>(gark::brusselator(cfg));
    auto y0 = std::make_shared<gark::Vec>(gark::brusselator_initial_state(cfg));
    return {[prob, y0, tf](const gark::MethodCard& m, long n) {
              const gark::MethodCard mm =
                  m.tableau.n_partitions == 2 ? m : gark::two_way_imex_form(m);
              return gark::integrate_fixed_final(*prob, mm, 0.0, tf, static_cast<int>(n), *y0);
            },
            tf};
  }
  if (problem == "zla") {
    gark::ZlaConfig cfg;
    const double tf = t_final > 0 ? t_final : cfg.t_end;
    auto prob = std::make_shared<gark::DaeProblem>(gark::zla(cfg));
    auto s0 = std::make_shared<gark::DaeState>(gark::zla_initial_state(cfg));
    return {[prob, s0, tf](const gark::MethodCard& m, long n) {
              const gark::MethodCard mm =
                  m.tableau.n_partitions == 2 ? m : gark::two_way_imex_form(m);
              const gark::DaeState s =
                  gark::integrate_dae_fixed_final(*prob, mm, 0.0, tf, static_cast<int>(n), *s0);
              gark::Vec y = s.x;
              y.insert(y.end(), s.z.begin(), s.z.end());
              return y;
            },
            tf};
  }
  if (problem == "logistic") {
    const double tf = t_final > 0 ? t_final : 1.0;
    auto split = std::make_shared<gark::OdeProblem>(gark::logistic_split());
    auto whole = std::make_shared<gark::OdeProblem>(gark::logistic_unpartitioned());
    return {[split, whole, tf](const gark::MethodCard& m, long n) {
              const gark::OdeProblem& prob =
                  m.tableau.n_partitions == 1 ? *whole : *split;
              const gark::MethodCard mm = m.tableau.n_partitions == prob.partitions
                                              ? m
                                              : gark::two_way_imex_form(m);
              return gark::integrate_fixed_final(prob, mm, 0.0, tf, static_cast<int>(n),
                                                 gark::Vec{0.5});
            },
            tf};
  }
  throw gark::Error("unknown problem: " + problem + " (expected brusselator|zla|logistic)");
}

}  // namespace

PYBIND11_MODULE(_gark, m) {
  m.doc() = "partitioned linearly implicit (Rosenbrock-type) time integration toolkit";

  py::register_exception<gark::Error>(m, "GarkError");

  m.def("builtin_names", &gark::builtin_names, "names of the built-in coefficient sets");
  m.def("row324_gamma", &gark::row324_gamma,
        "diagonal parameter of the four-stage W-method pair");

  m.def(
      "tableau_json", [](const std::string& method) { return gark::tableau_to_json(resolve(method).tableau); },
      py::arg("method"), "tableau of a built-in (or JSON round trip) as a JSON string");

  m.def(
      "validate",
      [](const std::string& method) {
        const auto rep = gark::validate(resolve(method).tableau);
        std::vector<std::string> out;
        for (const auto& v : rep.violations) out.push_back(v.message);
        return out;
      },
      py::arg("method"), "structural violations (empty list means valid)");

  m.def(
      "is_stiffly_accurate",
      [](const std::string& method, double tol) {
        return gark::is_stiffly_accurate(resolve(method).tableau, tol);
      },
      py::arg("method"), py::arg("tol") = 1e-12);

  m.def(
      "is_internally_consistent",
      [](const std::string& method, double tol) {
        return gark::is_internally_consistent(resolve(method).tableau, tol);
      },
      py::arg("method"), py::arg("tol") = 1e-12);

  m.def(
      "check",
      [](const std::string& method, int order, const std::string& cls, bool dae, bool imex) {
        const gark::MethodCard card = resolve(method);
        const auto& t = card.tableau;
        const int p = order > 0 ? order : t.claimed_order;
        const std::string c =
            !cls.empty() ? cls : (t.method_class == gark::MethodClass::Ros ? "ros" : "row");
        gark::ConditionReport rep =
            c == "ros" ? gark::check_gark_ros(t, p) : gark::check_gark_row(t, p);
        if (imex) {
          const gark::MethodCard two = gark::two_way_imex_form(card);
          rep.merge(gark::check_imex_coupling(two.tableau, p, c == "ros", two.imex_case1));
        }
        if (dae) {
          const gark::MethodCard two =
              t.n_partitions == 1 ? card : gark::two_way_imex_form(card);
          const int oz = std::clamp(p - 1, 2, 3);
          rep.merge(
              gark::check_dae_algebraic(two.tableau, 0, two.tableau.n_partitions - 1, p, oz));
        }
        return rep.to_json();
      },
      py::arg("method"), py::arg("order") = 0, py::arg("cls") = "", py::arg("dae") = false,
      py::arg("imex") = false, "order-condition report as a JSON string");

  m.def(
      "stability_value",
      [](const std::string& method, const std::vector<C>& z) {
        return gark::stability_value(resolve(method).tableau, z);
      },
      py::arg("method"), py::arg("z"), "R(Z) with one z per partition");

  m.def(
      "stability_at_stiff_limit",
      [](const std::string& method, int stiff_partition, const std::vector<C>& z_other) {
        return gark::stability_at_stiff_limit(resolve(method).tableau, stiff_partition, z_other);
      },
      py::arg("method"), py::arg("stiff_partition"), py::arg("z_other"));

  m.def(
      "dahlquist_step",
      [](const std::string& method, const std::vector<C>& lambdas, double h) {
        const gark::MethodCard card = resolve(method);
        const gark::OdeProblem prob = gark::dahlquist_split(lambdas);
        const gark::StepResult r =
            gark::step(prob, card, 0.0, gark::dahlquist_initial_state(), h);
        return C{r.y_next[0], r.y_next[1]};
      },
      py::arg("method"), py::arg("lambdas"), py::arg("h"),
      "one step on the scalar linear test problem from y0 = 1");

  m.def(
      "integrate_final",
      [](const std::string& problem, const std::string& method, long n_steps, double t_final,
         int grid) {
        const NamedProblem np = named_problem(problem, t_final, grid);
        return np.runner(resolve(method), n_steps);
      },
      py::arg("problem"), py::arg("method"), py::arg("n_steps"), py::arg("t_final") = 0.0,
      py::arg("grid") = 100, "fixed-step final state for a named benchmark problem");

  m.def(
      "converge",
      [](const std::string& problem, const std::string& method, long base_steps, int rungs,
         double factor, double t_final, int grid) {
        const NamedProblem np = named_problem(problem, t_final, grid);
        gark::LadderSpec spec;
        spec.base_steps = base_steps;
        spec.rungs = rungs;
        spec.factor = factor;
        const long n_ref = gark::ladder_steps(spec).back() * 100;
        const gark::Vec reference = np.runner(gark::builtin("imex-ros4-3-6"), n_ref);
        const gark::ConvergenceTable tab =
            gark::run_ladder(np.runner, resolve(method), spec, np.t_final, reference);
        py::dict out;
        out["method"] = tab.method_name;
        out["n_steps"] = tab.n_steps;
        out["h"] = tab.h;
        out["error"] = tab.error;
        out["fitted_order"] = tab.fitted_order;
        out["reference_steps"] = n_ref;
        return out;
      },
      py::arg("problem"), py::arg("method"), py::arg("base_steps") = 10, py::arg("rungs") = 6,
      py::arg("factor") = 2.0, py::arg("t_final") = 0.0, py::arg("grid") = 100,
      "convergence ladder against a fine same-family reference");

  m.def("zla_initial_state", []() {
    const gark::DaeState s = gark::zla_initial_state();
    return py::make_tuple(s.x, s.z, s.constraint_residual);
  });
}
