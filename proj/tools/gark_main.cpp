// Command-line front end: method inspection, order-condition checking,
// integration runs, convergence studies, and stability scans.
//
// Exit codes: 0 ok/pass, 1 condition failure, 2 input error, 3 runtime failure.

#include <algorithm>
#include <cmath>
#include <complex>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "gark/convergence.hpp"
#include "gark/dae.hpp"
#include "gark/methods.hpp"
#include "gark/ode.hpp"
#include "gark/order_conditions.hpp"
#include "gark/problems.hpp"
#include "gark/stability.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitConditionFailure = 1;
constexpr int kExitInputError = 2;
constexpr int kExitRuntimeFailure = 3;

/// user-input problems map to exit code 2
struct UsageError : gark::Error {
  explicit UsageError(const std::string& what) : gark::Error(what) {}
};

gark::MethodCard resolve_method(const std::string& spec) {
  const auto names = gark::builtin_names();
  if (std::find(names.begin(), names.end(), spec) != names.end()) return gark::builtin(spec);
  std::ifstream in(spec);
  if (!in) throw gark::UnknownMethodError("not a built-in method and not a readable file: " + spec);
  std::stringstream ss;
  ss << in.rdbuf();
  gark::PartitionedTableau t = gark::tableau_from_json(ss.str());
  const auto rep = gark::validate(t);
  if (!rep.valid()) {
    std::string msg = "tableau validation failed:";
    for (const auto& v : rep.violations) msg += "\n  " + v.message;
    throw gark::ShapeError(msg);
  }
  return gark::make_card(std::move(t));
}

double default_tol_for(const gark::MethodCard& card) {
  // entries derived from a polynomial root carry its refinement error
  return card.tableau.name == "imex-row3-2-4" ? 1e-8 : gark::kDefaultConditionTol;
}

// --config support: a JSON object whose keys mirror long option names;
// "method"/"problem" map to the positionals.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::vector<std::string> out;
  std::string config_path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      config_path = args[i + 1];
      ++i;
    } else {
      out.push_back(args[i]);
    }
  }
  if (config_path.empty()) return out;
  std::ifstream in(config_path);
  if (!in) throw UsageError("cannot read config file: " + config_path);
  json j = json::parse(in);
  std::vector<std::string> extra;
  for (const char* pos : {"problem", "method"}) {
    if (j.contains(pos)) {
      extra.push_back(j[pos].get<std::string>());
      j.erase(pos);
    }
  }
  for (auto& [key, value] : j.items()) {
    const std::string flag = "--" + key;
    if (value.is_boolean()) {
      if (value.get<bool>()) extra.push_back(flag);
    } else if (value.is_array()) {
      for (const auto& v : value) {
        extra.push_back(flag);
        extra.push_back(v.is_string() ? v.get<std::string>() : v.dump());
      }
    } else {
      extra.push_back(flag);
      extra.push_back(value.is_string() ? value.get<std::string>() : value.dump());
    }
  }
  // positionals and config-derived flags first, then explicit args override
  std::vector<std::string> merged;
  if (!out.empty()) merged.push_back(out.front());
  merged.insert(merged.end(), extra.begin(), extra.end());
  merged.insert(merged.end(), out.begin() + (out.empty() ? 0 : 1), out.end());
  return merged;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw gark::Error("cannot open output file: " + path);
  out << text;
}

// ---------------------------------------------------------------- check ----

int cmd_check(const std::string& method_spec, int order, std::string cls, bool dae, bool imex,
              bool embedded, double tol) {
  gark::MethodCard card = resolve_method(method_spec);
  const gark::PartitionedTableau& t = card.tableau;
  if (order <= 0) order = t.claimed_order;
  if (order < 1 || order > 4)
    throw UsageError("conditions are implemented for orders 1..4; give --order explicitly");
  if (cls.empty()) cls = t.method_class == gark::MethodClass::Ros ? "ros" : "row";
  if (tol <= 0) tol = default_tol_for(card);

  gark::ConditionReport report;
  if (cls == "ros")
    report = gark::check_gark_ros(t, order);
  else if (cls == "row")
    report = gark::check_gark_row(t, order);
  else
    throw UsageError("--class must be ros or row");

  if (imex) {
    gark::MethodCard two = gark::two_way_imex_form(card);
    report.merge(gark::check_imex_coupling(two.tableau, order, cls == "ros", two.imex_case1));
  }
  if (dae) {
    gark::MethodCard two = t.n_partitions == 1 ? card : gark::two_way_imex_form(card);
    const int alg = two.tableau.n_partitions - 1;
    const int order_z = std::clamp(order - 1, 2, 3);
    report.merge(gark::check_dae_algebraic(two.tableau, 0, alg, order, order_z));
  }
  if (embedded) {
    if (!t.has_embedded()) throw UsageError("method has no embedded weights");
    const gark::PartitionedTableau et = t.embedded_variant();
    const int eo = t.claimed_embedded_order;
    report.merge(cls == "ros" ? gark::check_gark_ros(et, eo) : gark::check_gark_row(et, eo));
  }

  json out = json::parse(report.to_json());
  out["method"] = t.name;
  out["order"] = order;
  out["class"] = cls;
  out["tolerance"] = tol;
  out["pass"] = report.passes(tol);
  std::cout << out.dump(2) << "\n";
  return report.passes(tol) ? kExitOk : kExitConditionFailure;
}

// ------------------------------------------------------------- problems ----

struct ProblemRunner {
  gark::FinalStateFn runner;
  gark::Vec reference_state(long n_ref) const { return runner(reference_method, n_ref); }
  gark::MethodCard reference_method;
  double t_final = 0.0;
  int state_dim = 0;
};

gark::MethodCard adapt_method(const gark::MethodCard& card, int problem_partitions) {
  if (card.tableau.n_partitions == problem_partitions) return card;
  if (problem_partitions == 2) return gark::two_way_imex_form(card);
  throw gark::ShapeError("method " + card.tableau.name + " has " +
                         std::to_string(card.tableau.n_partitions) +
                         " partitions; problem expects " + std::to_string(problem_partitions));
}

ProblemRunner make_runner(const std::string& problem, double t_final, int grid) {
  ProblemRunner pr;
  pr.reference_method = gark::builtin("imex-ros4-3-6");
  if (problem == "brusselator") {
    gark::BrusselatorConfig cfg;
    cfg.interior_points = grid;
    pr.t_final = t_final > 0 ? t_final : cfg.t_end;
    auto prob = std::make_shared<gark::OdeProblem>(gark::brusselator(cfg));
    auto y0 = std::make_shared<gark::Vec>(gark::brusselator_initial_state(cfg));
    pr.state_dim = prob->dimension;
    const double tf = pr.t_final;
    pr.runner = [prob, y0, tf](const gark::MethodCard& m, long n) {
      return gark::integrate_fixed_final(*prob, adapt_method(m, 2), 0.0, tf,
                                         static_cast<int>(n), *y0);
    };
  } else if (problem == "zla") {
    gark::ZlaConfig cfg;
    pr.t_final = t_final > 0 ? t_final : cfg.t_end;
    auto prob = std::make_shared<gark::DaeProblem>(gark::zla(cfg));
    auto s0 = std::make_shared<gark::DaeState>(gark::zla_initial_state(cfg));
    pr.state_dim = prob->dim_x + prob->dim_z;
    const double tf = pr.t_final;
    pr.runner = [prob, s0, tf](const gark::MethodCard& m, long n) {
      const gark::DaeState s =
          gark::integrate_dae_fixed_final(*prob, adapt_method(m, 2), 0.0, tf,
                                          static_cast<int>(n), *s0);
      gark::Vec y = s.x;
      y.insert(y.end(), s.z.begin(), s.z.end());
      return y;
    };
  } else if (problem == "logistic") {
    pr.t_final = t_final > 0 ? t_final : 1.0;
    auto split = std::make_shared<gark::OdeProblem>(gark::logistic_split());
    auto whole = std::make_shared<gark::OdeProblem>(gark::logistic_unpartitioned());
    pr.state_dim = 1;
    const double tf = pr.t_final;
    pr.runner = [split, whole, tf](const gark::MethodCard& m, long n) {
      const gark::OdeProblem& prob = m.tableau.n_partitions == 1 ? *whole : *split;
      return gark::integrate_fixed_final(prob, adapt_method(m, prob.partitions), 0.0, tf,
                                         static_cast<int>(n), gark::Vec{0.5});
    };
  } else if (problem == "dahlquist") {
    pr.t_final = t_final > 0 ? t_final : 1.0;
    pr.state_dim = 2;
    const double tf = pr.t_final;
    pr.runner = [tf](const gark::MethodCard& m, long n) {
      // same flow regardless of how many partitions split the sum
      const std::vector<std::complex<double>> pool{{-1.0, 0.0}, {-4.0, 0.0}, {-5.0, 0.0}};
      const int np = m.tableau.n_partitions;
      std::vector<std::complex<double>> lams;
      std::complex<double> total{-10.0, 0.0};
      for (int q = 0; q + 1 < np; ++q) {
        lams.push_back(pool[q % pool.size()]);
        total -= pool[q % pool.size()];
      }
      lams.push_back(total);
      const gark::OdeProblem prob = gark::dahlquist_split(lams);
      return gark::integrate_fixed_final(prob, m, 0.0, tf, static_cast<int>(n),
                                         gark::dahlquist_initial_state());
    };
  } else {
    throw UsageError("unknown problem: " + problem +
                      " (expected brusselator|zla|logistic|dahlquist)");
  }
  return pr;
}

// -------------------------------------------------------------- converge ----

int cmd_converge(const std::string& problem, const std::vector<std::string>& methods,
                 const std::vector<long>& base_steps, int rungs, double factor, double t_final,
                 int grid, const std::string& out_path) {
  if (methods.empty()) throw UsageError("at least one -m/--method required");
  ProblemRunner pr = make_runner(problem, t_final, grid);

  std::vector<gark::MethodCard> cards;
  for (const auto& m : methods) cards.push_back(resolve_method(m));

  std::vector<gark::LadderSpec> specs;
  for (std::size_t i = 0; i < cards.size(); ++i) {
    gark::LadderSpec spec;
    spec.base_steps = base_steps.empty() ? 10 : base_steps[std::min(i, base_steps.size() - 1)];
    spec.rungs = rungs;
    spec.factor = factor;
    specs.push_back(spec);
  }

  // one reference per distinct finest step count, at h_min / 100
  std::map<long, gark::Vec> references;
  for (const auto& spec : specs) {
    const long n_max = gark::ladder_steps(spec).back();
    const long n_ref = n_max * 100;
    if (!references.count(n_ref)) references[n_ref] = pr.runner(pr.reference_method, n_ref);
  }

  std::vector<gark::ConvergenceTable> tables;
  bool any_failure = false;
  json orders = json::object();
  for (std::size_t i = 0; i < cards.size(); ++i) {
    const long n_ref = gark::ladder_steps(specs[i]).back() * 100;
    gark::ConvergenceTable tab =
        gark::run_ladder(pr.runner, cards[i], specs[i], pr.t_final, references.at(n_ref));
    tab.reference_method = pr.reference_method.tableau.name;
    tab.reference_steps = n_ref;
    any_failure = any_failure || !tab.all_rungs_ok();
    orders[tab.method_name] = tab.fitted_order;
    tables.push_back(std::move(tab));
  }

  std::ostringstream csv;
  gark::write_convergence_csv(csv, tables);
  if (!out_path.empty())
    write_text_file(out_path, csv.str());
  else
    std::cout << csv.str();
  // metadata moves to stderr whenever the CSV occupies stdout
  std::ostream& meta_out = out_path.empty() ? std::cerr : std::cout;

  json meta;
  meta["problem"] = problem;
  meta["t_final"] = pr.t_final;
  meta["reference_method"] = pr.reference_method.tableau.name;
  json refs = json::object();
  for (const auto& t : tables) refs[t.method_name] = t.reference_steps;
  meta["reference_steps"] = refs;
  meta["fitted_orders"] = orders;
  if (any_failure) {
    json fails = json::array();
    for (const auto& t : tables)
      for (std::size_t k = 0; k < t.rung_errors.size(); ++k)
        if (!t.rung_errors[k].empty())
          fails.push_back({{"method", t.method_name},
                           {"n_steps", t.n_steps[k]},
                           {"error", t.rung_errors[k]}});
    meta["failures"] = fails;
  }
  meta_out << meta.dump(2) << "\n";
  return any_failure ? kExitRuntimeFailure : kExitOk;
}

// -------------------------------------------------------------- integrate ----

int cmd_integrate(const std::string& problem, const std::string& method_spec, long n_steps,
                  double h, double atol, double rtol, double t_final, int grid,
                  const std::string& out_path, const std::string& stats_path) {
  gark::MethodCard card = resolve_method(method_spec);
  const bool adaptive = atol > 0 || rtol > 0;
  json stats;

  std::ostringstream csv;
  if (problem == "zla") {
    if (adaptive) throw UsageError("adaptive stepping is not available for the DAE problem");
    gark::ZlaConfig cfg;
    const double tf = t_final > 0 ? t_final : cfg.t_end;
    if (n_steps <= 0) {
      if (h <= 0) throw UsageError("provide --steps or --h");
      n_steps = static_cast<long>(std::ceil(tf / h));
    }
    const gark::DaeProblem prob = gark::zla(cfg);
    const gark::DaeState s0 = gark::zla_initial_state(cfg);
    const gark::DaeTrajectory traj = gark::integrate_dae_fixed(
        prob, adapt_method(card, 2), 0.0, tf, static_cast<int>(n_steps), s0);
    gark::write_dae_trajectory_csv(csv, traj.times, traj.xs, traj.zs, traj.g_norms);
    stats["steps_accepted"] = traj.stats.steps_accepted;
    stats["steps_rejected"] = traj.stats.steps_rejected;
    stats["rhs_evals"] = traj.stats.totals.rhs_evals;
    stats["jacobian_evals"] = traj.stats.totals.jacobian_evals;
    stats["lu_factorizations"] = traj.stats.totals.lu_factorizations;
    stats["lu_solves"] = traj.stats.totals.lu_solves;
  } else {
    gark::OdeProblem prob;
    gark::Vec y0;
    double tf = t_final;
    if (problem == "brusselator") {
      gark::BrusselatorConfig cfg;
      cfg.interior_points = grid;
      if (tf <= 0) tf = cfg.t_end;
      prob = gark::brusselator(cfg);
      y0 = gark::brusselator_initial_state(cfg);
    } else if (problem == "logistic") {
      if (tf <= 0) tf = 1.0;
      prob = card.tableau.n_partitions == 1 ? gark::logistic_unpartitioned()
                                            : gark::logistic_split();
      y0 = {0.5};
    } else if (problem == "dahlquist") {
      if (tf <= 0) tf = 1.0;
      std::vector<std::complex<double>> lams;
      for (int q = 0; q < card.tableau.n_partitions; ++q) lams.push_back({-2.0, 0.0});
      prob = gark::dahlquist_split(lams);
      y0 = gark::dahlquist_initial_state();
    } else {
      throw UsageError("unknown problem: " + problem);
    }
    const gark::MethodCard m = adapt_method(card, prob.partitions);
    gark::Trajectory traj;
    if (adaptive) {
      gark::StepController ctrl;
      if (atol > 0) ctrl.atol = atol;
      if (rtol > 0) ctrl.rtol = rtol;
      traj = gark::integrate_adaptive(prob, m, 0.0, tf, y0, ctrl);
    } else {
      if (n_steps <= 0) {
        if (h <= 0) throw UsageError("provide --steps, --h, or --atol/--rtol");
        n_steps = static_cast<long>(std::ceil(tf / h));
      }
      traj = gark::integrate_fixed(prob, m, 0.0, tf, static_cast<int>(n_steps), y0);
    }
    gark::write_trajectory_csv(csv, traj.times, traj.states);
    stats["steps_accepted"] = traj.stats.steps_accepted;
    stats["steps_rejected"] = traj.stats.steps_rejected;
    stats["rhs_evals"] = traj.stats.totals.rhs_evals;
    stats["jacobian_evals"] = traj.stats.totals.jacobian_evals;
    stats["lu_factorizations"] = traj.stats.totals.lu_factorizations;
    stats["lu_solves"] = traj.stats.totals.lu_solves;
    stats["newton_iterations"] = traj.stats.totals.newton_iterations;
  }

  if (!out_path.empty())
    write_text_file(out_path, csv.str());
  else
    std::cout << csv.str();
  if (!stats_path.empty())
    write_text_file(stats_path, stats.dump(2) + "\n");
  else
    (out_path.empty() ? std::cerr : std::cout) << stats.dump(2) << "\n";
  return kExitOk;
}

// -------------------------------------------------------------- stability ----

struct AxisSpec {
  double lo = 0, hi = 0;
  int n = 0;
};

AxisSpec parse_axis(const std::string& s) {
  AxisSpec a;
  if (std::sscanf(s.c_str(), "%lf:%lf:%d", &a.lo, &a.hi, &a.n) != 3)
    throw UsageError("axis spec must be lo:hi:n, got " + s);
  return a;
}

int cmd_stability(const std::string& method_spec, int sweep, const std::string& re_spec,
                  const std::string& im_spec, const std::vector<std::string>& pins,
                  const std::string& out_path) {
  gark::MethodCard card = resolve_method(method_spec);
  const int n = card.tableau.n_partitions;
  if (sweep <= 0) sweep = n;  // default: the last (stiff) partition
  if (sweep < 1 || sweep > n) throw UsageError("--sweep out of range");
  const AxisSpec re = parse_axis(re_spec);
  const AxisSpec im = parse_axis(im_spec);
  if (re.n < 1 || im.n < 1) throw UsageError("grid resolution must be at least 1");

  std::vector<std::complex<double>> pinned(n - 1, 0.0);
  for (std::size_t i = 0; i < pins.size() && i < pinned.size(); ++i) {
    double pre = 0, pim = 0;
    if (std::sscanf(pins[i].c_str(), "%lf:%lf", &pre, &pim) >= 1)
      pinned[i] = {pre, pim};
    else
      throw UsageError("pin must be re or re:im, got " + pins[i]);
  }
  const gark::StabilityGrid grid =
      gark::scan_region(card.tableau, sweep - 1, pinned, re.lo, re.hi, re.n, im.lo, im.hi, im.n);
  std::ostringstream csv;
  gark::write_stability_csv(csv, grid);
  if (!out_path.empty())
    write_text_file(out_path, csv.str());
  else
    std::cout << csv.str();
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"partitioned linearly implicit (Rosenbrock-type) time integration toolkit"};
  app.require_subcommand(1);

  // check
  auto* check = app.add_subcommand("check", "evaluate order-condition families for a method");
  std::string check_method, check_class;
  int check_order = 0;
  bool check_dae = false, check_imex = false, check_embedded = false;
  double check_tol = 0.0;
  check->add_option("method", check_method, "built-in name or tableau JSON file")->required();
  check->add_option("--order", check_order, "order to verify (default: claimed)");
  check->add_option("--class", check_class, "ros|row (default: method class)");
  check->add_flag("--dae", check_dae, "include index-1 DAE conditions");
  check->add_flag("--imex", check_imex, "include IMEX coupling conditions");
  check->add_flag("--embedded", check_embedded, "also verify the embedded weights");
  check->add_option("--tol", check_tol, "pass tolerance (default 1e-10, 1e-8 for root-derived)");

  // converge
  auto* conv = app.add_subcommand("converge", "fixed-step convergence study");
  std::string conv_problem, conv_out;
  std::vector<std::string> conv_methods;
  std::vector<long> conv_steps;
  int conv_rungs = 10;
  double conv_factor = 2.0, conv_tfinal = 0.0;
  int conv_grid = 100;
  conv->add_option("problem", conv_problem, "brusselator|zla|logistic|dahlquist")->required();
  conv->add_option("-m,--method", conv_methods, "method(s) to run")->required();
  conv->add_option("--steps", conv_steps,
                   "coarsest rung step count(s); one value per method or a single shared value");
  conv->add_option("--rungs", conv_rungs, "number of ladder rungs (default 10)");
  conv->add_option("--factor", conv_factor, "step multiplier between rungs (default 2)");
  conv->add_option("--t-final", conv_tfinal, "integration end time");
  conv->add_option("--grid", conv_grid, "interior grid points (brusselator)");
  conv->add_option("--out", conv_out, "CSV output path (default stdout)");

  // integrate
  auto* integ = app.add_subcommand("integrate", "single integration run, trajectory to CSV");
  integ->set_help_flag("--help", "print help");  // frees --h for the step size
  std::string int_problem, int_method, int_out, int_stats;
  long int_steps = 0;
  double int_h = 0.0, int_atol = 0.0, int_rtol = 0.0, int_tfinal = 0.0;
  int int_grid = 100;
  integ->add_option("problem", int_problem, "brusselator|zla|logistic|dahlquist")->required();
  integ->add_option("-m,--method", int_method, "method")->required();
  integ->add_option("--steps", int_steps, "fixed step count");
  integ->add_option("--h", int_h, "fixed step size");
  integ->add_option("--atol", int_atol, "adaptive absolute tolerance");
  integ->add_option("--rtol", int_rtol, "adaptive relative tolerance");
  integ->add_option("--t-final", int_tfinal, "integration end time");
  integ->add_option("--grid", int_grid, "interior grid points (brusselator)");
  integ->add_option("--out", int_out, "trajectory CSV path (default stdout)");
  integ->add_option("--stats-out", int_stats, "statistics JSON path (default stdout)");

  // stability
  auto* stab = app.add_subcommand("stability", "sample |R| over a rectangle of one partition's z");
  std::string stab_method, stab_re, stab_im, stab_out;
  int stab_sweep = 0;
  std::vector<std::string> stab_pins;
  stab->add_option("method", stab_method, "method")->required();
  stab->add_option("--sweep", stab_sweep, "1-based partition to sweep (default: last)");
  stab->add_option("--re", stab_re, "real axis spec lo:hi:n")->required();
  stab->add_option("--im", stab_im, "imaginary axis spec lo:hi:n")->required();
  stab->add_option("--pin", stab_pins, "pinned z for the remaining partitions (re or re:im)");
  stab->add_option("--out", stab_out, "grid CSV path (default stdout)");

  // export-tableau
  auto* exp = app.add_subcommand("export-tableau", "write a method's tableau as JSON");
  std::string exp_method, exp_out;
  exp->add_option("method", exp_method, "method")->required();
  exp->add_option("--out", exp_out, "output path (default stdout)");

  std::vector<std::string> raw(argv + 1, argv + argc);
  std::vector<std::string> expanded;
  try {
    expanded = expand_config(raw);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  std::vector<const char*> cargs;
  cargs.push_back(argv[0]);
  for (const auto& a : expanded) cargs.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(cargs.size()), cargs.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (check->parsed())
      return cmd_check(check_method, check_order, check_class, check_dae, check_imex,
                       check_embedded, check_tol);
    if (conv->parsed())
      return cmd_converge(conv_problem, conv_methods, conv_steps, conv_rungs, conv_factor,
                          conv_tfinal, conv_grid, conv_out);
    if (integ->parsed())
      return cmd_integrate(int_problem, int_method, int_steps, int_h, int_atol, int_rtol,
                           int_tfinal, int_grid, int_out, int_stats);
    if (stab->parsed())
      return cmd_stability(stab_method, stab_sweep, stab_re, stab_im, stab_pins, stab_out);
    if (exp->parsed()) {
      const gark::MethodCard card = resolve_method(exp_method);
      const std::string text = gark::tableau_to_json(card.tableau) + "\n";
      if (!exp_out.empty())
        write_text_file(exp_out, text);
      else
        std::cout << text;
      return kExitOk;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const gark::UnknownMethodError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const gark::ShapeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const gark::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntimeFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntimeFailure;
  }
  return kExitInputError;
}
