#include "gark/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <thread>

namespace gark {

std::vector<long> ladder_steps(const LadderSpec& spec) {
  if (spec.base_steps < 1 || spec.rungs < 1 || spec.factor <= 1.0)
    throw ShapeError("ladder_steps: need base_steps >= 1, rungs >= 1, factor > 1");
  std::vector<long> n(spec.rungs);
  double cur = static_cast<double>(spec.base_steps);
  for (int k = 0; k < spec.rungs; ++k) {
    n[k] = static_cast<long>(std::llround(cur));
    cur *= spec.factor;
  }
  return n;
}

double fit_observed_order(std::vector<double> hs, std::vector<double> errors, int tail) {
  if (hs.size() != errors.size() || hs.empty())
    throw ShapeError("fit_observed_order: size mismatch");
  // sort by decreasing h so the tail is the finest end
  std::vector<std::size_t> idx(hs.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return hs[a] > hs[b]; });
  const int use = std::min<int>(tail, static_cast<int>(hs.size()));
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int k = 0; k < use; ++k) {
    const std::size_t i = idx[idx.size() - use + k];
    const double x = std::log(hs[i]);
    const double y = std::log(std::max(errors[i], 1e-300));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = use * sxx - sx * sx;
  if (denom == 0.0) return 0.0;
  return (use * sxy - sx * sy) / denom;
}

int ladder_thread_cap() {
  if (const char* env = std::getenv("GARK_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<int>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

ConvergenceTable run_ladder(const FinalStateFn& runner, const MethodCard& method,
                            const LadderSpec& spec, double t_span, const Vec& reference) {
  ConvergenceTable table;
  table.method_name = method.tableau.name;
  table.n_steps = ladder_steps(spec);
  const int rungs = static_cast<int>(table.n_steps.size());
  table.h.resize(rungs);
  table.error.assign(rungs, std::nan(""));
  table.rung_errors.assign(rungs, std::string());

  const int cap = std::max(1, ladder_thread_cap());
  int next = 0;
  while (next < rungs) {
    const int batch = std::min(cap, rungs - next);
    std::vector<std::thread> threads;
    threads.reserve(batch);
    for (int b = 0; b < batch; ++b) {
      const int k = next + b;
      threads.emplace_back([&, k]() {
        try {
          const Vec y = runner(method, table.n_steps[k]);
          double s = 0.0;
          for (std::size_t c = 0; c < y.size(); ++c) {
            const double d = y[c] - reference[c];
            s += d * d;
          }
          table.error[k] = std::sqrt(s);
        } catch (const std::exception& e) {
          table.rung_errors[k] = e.what();
        }
      });
    }
    for (auto& th : threads) th.join();
    next += batch;
  }
  std::vector<double> hs_ok, err_ok;
  for (int k = 0; k < rungs; ++k) {
    table.h[k] = t_span / static_cast<double>(table.n_steps[k]);
    if (table.rung_errors[k].empty()) {
      hs_ok.push_back(table.h[k]);
      err_ok.push_back(table.error[k]);
    }
  }
  table.fitted_order = hs_ok.empty() ? 0.0 : fit_observed_order(hs_ok, err_ok);
  return table;
}

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_convergence_csv(std::ostream& os, const std::vector<ConvergenceTable>& tables) {
  os << "method,n_steps,h,error\n";
  for (const auto& t : tables)
    for (std::size_t k = 0; k < t.n_steps.size(); ++k)
      os << t.method_name << ',' << t.n_steps[k] << ',' << format_g17(t.h[k]) << ','
         << format_g17(t.error[k]) << '\n';
}

void write_trajectory_csv(std::ostream& os, const std::vector<double>& times,
                          const std::vector<Vec>& states) {
  const std::size_t d = states.empty() ? 0 : states[0].size();
  os << 't';
  for (std::size_t c = 0; c < d; ++c) os << ",y" << c;
  os << '\n';
  for (std::size_t k = 0; k < times.size(); ++k) {
    os << format_g17(times[k]);
    for (std::size_t c = 0; c < d; ++c) os << ',' << format_g17(states[k][c]);
    os << '\n';
  }
}

void write_dae_trajectory_csv(std::ostream& os, const std::vector<double>& times,
                              const std::vector<Vec>& xs, const std::vector<Vec>& zs,
                              const std::vector<double>& g_norms) {
  const std::size_t dx = xs.empty() ? 0 : xs[0].size();
  const std::size_t dz = zs.empty() ? 0 : zs[0].size();
  os << 't';
  for (std::size_t c = 0; c < dx + dz; ++c) os << ",y" << c;
  os << ",g_norm\n";
  for (std::size_t k = 0; k < times.size(); ++k) {
    os << format_g17(times[k]);
    for (std::size_t c = 0; c < dx; ++c) os << ',' << format_g17(xs[k][c]);
    for (std::size_t c = 0; c < dz; ++c) os << ',' << format_g17(zs[k][c]);
    os << ',' << format_g17(g_norms[k]) << '\n';
  }
}

void write_stability_csv(std::ostream& os, const StabilityGrid& grid) {
  os << "re,im,absR\n";
  for (int j = 0; j < grid.ny; ++j)
    for (int i = 0; i < grid.nx; ++i)
      os << format_g17(grid.re[i]) << ',' << format_g17(grid.im[j]) << ','
         << format_g17(grid.mag[static_cast<std::size_t>(j) * grid.nx + i]) << '\n';
}

}  // namespace gark
