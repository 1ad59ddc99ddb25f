#include "gark/order_conditions.hpp"

#include <cmath>

#include <json.hpp>

#include "gark/linalg.hpp"

namespace gark {

namespace {

Vec ones(int n) { return Vec(n, 1.0); }

Vec hadamard(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * b[i];
  return r;
}

Vec matvec(const RealMatrix& m, const Vec& v) { return m.apply(v); }

void add(ConditionReport& rep, std::string id, std::initializer_list<int> idx, double lhs,
         double target) {
  ConditionEntry e;
  e.id = std::move(id);
  int k = 0;
  for (int v : idx) e.indices[k++] = v + 1;
  e.lhs = lhs;
  e.target = target;
  e.residual = std::abs(lhs - target);
  rep.entries.push_back(std::move(e));
}

}  // namespace

std::string ConditionReport::to_json() const {
  nlohmann::json j;
  j["max_residual"] = max_residual();
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& e : entries) {
    nlohmann::json je;
    je["id"] = e.id;
    nlohmann::json idx = nlohmann::json::array();
    for (int v : e.indices)
      if (v > 0) idx.push_back(v);
    je["indices"] = idx;
    je["lhs"] = e.lhs;
    je["target"] = e.target;
    je["residual"] = e.residual;
    arr.push_back(je);
  }
  j["conditions"] = arr;
  return j.dump(2);
}

namespace {

void require_order_range(int order, int lo, int hi, const char* who) {
  if (order < lo || order > hi)
    throw ShapeError(std::string(who) + ": order must lie in " + std::to_string(lo) + ".." +
                     std::to_string(hi));
}

}  // namespace

ConditionReport check_gark_ros(const PartitionedTableau& t, int order) {
  require_order_range(order, 1, 4, "check_gark_ros");
  const int N = t.n_partitions;
  const auto d = derive_vectors(t);
  ConditionReport rep;
  for (int m = 0; m < N; ++m)
    add(rep, "ros.o1.b1", {m}, dot(t.weights[m], ones(t.stage_counts[m])), 1.0);
  if (order < 2) return rep;
  for (int m = 0; m < N; ++m)
    for (int n = 0; n < N; ++n)
      add(rep, "ros.o2.be", {m, n}, dot(t.weights[m], d.e_at(m, n)), 0.5);
  if (order < 3) return rep;
  for (int m = 0; m < N; ++m)
    for (int n = 0; n < N; ++n)
      for (int p = 0; p < N; ++p) {
        add(rep, "ros.o3.bcc", {m, n, p},
            dot(t.weights[m], hadamard(d.c_at(m, n), d.c_at(m, p))), 1.0 / 3.0);
        add(rep, "ros.o3.bbe", {m, n, p},
            dot(t.weights[m], matvec(d.beta(m, n), d.e_at(n, p))), 1.0 / 6.0);
      }
  if (order < 4) return rep;
  for (int m = 0; m < N; ++m)
    for (int n = 0; n < N; ++n)
      for (int p = 0; p < N; ++p)
        for (int q = 0; q < N; ++q) {
          add(rep, "ros.o4.bccc", {m, n, p, q},
              dot(t.weights[m], hadamard(hadamard(d.c_at(m, n), d.c_at(m, p)), d.c_at(m, q))),
              0.25);
          add(rep, "ros.o4.b_ae_c", {m, n, p, q},
              dot(t.weights[m], hadamard(matvec(t.alpha(m, n), d.e_at(n, p)), d.c_at(m, q))),
              0.125);
          add(rep, "ros.o4.bbcc", {m, n, p, q},
              dot(t.weights[m], matvec(d.beta(m, n), hadamard(d.c_at(n, p), d.c_at(n, q)))),
              1.0 / 12.0);
          add(rep, "ros.o4.bbbe", {m, n, p, q},
              dot(t.weights[m], matvec(d.beta(m, n), matvec(d.beta(n, p), d.e_at(p, q)))),
              1.0 / 24.0);
        }
  return rep;
}

ConditionReport check_gark_row(const PartitionedTableau& t, int order) {
  require_order_range(order, 1, 4, "check_gark_row");
  const int N = t.n_partitions;
  const auto d = derive_vectors(t);
  ConditionReport rep;
  for (int m = 0; m < N; ++m)
    add(rep, "row.o1.b1", {m}, dot(t.weights[m], ones(t.stage_counts[m])), 1.0);
  if (order < 2) return rep;
  for (int m = 0; m < N; ++m)
    for (int n = 0; n < N; ++n) {
      add(rep, "row.o2.bc", {m, n}, dot(t.weights[m], d.c_at(m, n)), 0.5);
      add(rep, "row.o2.bg", {m, n}, dot(t.weights[m], d.g_at(m, n)), 0.0);
    }
  if (order < 3) return rep;
  for (int m = 0; m < N; ++m)
    for (int n = 0; n < N; ++n)
      for (int p = 0; p < N; ++p) {
        add(rep, "row.o3.bcc", {m, n, p},
            dot(t.weights[m], hadamard(d.c_at(m, n), d.c_at(m, p))), 1.0 / 3.0);
        add(rep, "row.o3.bac", {m, n, p}, dot(t.weights[m], matvec(t.alpha(m, n), d.c_at(n, p))),
            1.0 / 6.0);
        add(rep, "row.o3.bgc", {m, n, p}, dot(t.weights[m], matvec(t.gamma(m, n), d.c_at(n, p))),
            0.0);
        add(rep, "row.o3.bag", {m, n, p}, dot(t.weights[m], matvec(t.alpha(m, n), d.g_at(n, p))),
            0.0);
        add(rep, "row.o3.bgg", {m, n, p}, dot(t.weights[m], matvec(t.gamma(m, n), d.g_at(n, p))),
            0.0);
      }
  if (order < 4) return rep;
  for (int m = 0; m < N; ++m)
    for (int n = 0; n < N; ++n)
      for (int p = 0; p < N; ++p)
        for (int q = 0; q < N; ++q) {
          const Vec cnp = d.c_at(n, p);
          add(rep, "row.o4.bccc", {m, n, p, q},
              dot(t.weights[m], hadamard(hadamard(d.c_at(m, n), d.c_at(m, p)), d.c_at(m, q))),
              0.25);
          add(rep, "row.o4.b_ac_c", {m, n, p, q},
              dot(t.weights[m], hadamard(matvec(t.alpha(m, n), cnp), d.c_at(m, q))), 0.125);
          add(rep, "row.o4.bacc", {m, n, p, q},
              dot(t.weights[m], matvec(t.alpha(m, n), hadamard(cnp, d.c_at(n, q)))), 1.0 / 12.0);
          add(rep, "row.o4.baac", {m, n, p, q},
              dot(t.weights[m], matvec(t.alpha(m, n), matvec(t.alpha(n, p), d.c_at(p, q)))),
              1.0 / 24.0);
          add(rep, "row.o4.b_ag_c", {m, n, p, q},
              dot(t.weights[m], hadamard(matvec(t.alpha(m, n), d.g_at(n, p)), d.c_at(m, q))), 0.0);
          add(rep, "row.o4.bgcc", {m, n, p, q},
              dot(t.weights[m], matvec(t.gamma(m, n), hadamard(cnp, d.c_at(n, q)))), 0.0);
          add(rep, "row.o4.bgac", {m, n, p, q},
              dot(t.weights[m], matvec(t.gamma(m, n), matvec(t.alpha(n, p), d.c_at(p, q)))), 0.0);
          add(rep, "row.o4.bagc", {m, n, p, q},
              dot(t.weights[m], matvec(t.alpha(m, n), matvec(t.gamma(n, p), d.c_at(p, q)))), 0.0);
          add(rep, "row.o4.baag", {m, n, p, q},
              dot(t.weights[m], matvec(t.alpha(m, n), matvec(t.alpha(n, p), d.g_at(p, q)))), 0.0);
          add(rep, "row.o4.bgag", {m, n, p, q},
              dot(t.weights[m], matvec(t.gamma(m, n), matvec(t.alpha(n, p), d.g_at(p, q)))), 0.0);
          add(rep, "row.o4.bagg", {m, n, p, q},
              dot(t.weights[m], matvec(t.alpha(m, n), matvec(t.gamma(n, p), d.g_at(p, q)))), 0.0);
          add(rep, "row.o4.bggc", {m, n, p, q},
              dot(t.weights[m], matvec(t.gamma(m, n), matvec(t.gamma(n, p), d.c_at(p, q)))), 0.0);
          add(rep, "row.o4.bggg", {m, n, p, q},
              dot(t.weights[m], matvec(t.gamma(m, n), matvec(t.gamma(n, p), d.g_at(p, q)))), 0.0);
        }
  return rep;
}

ConditionReport check_internal_then_coupling_specialcase2(const Vec& b, const RealMatrix& alpha,
                                                          const RealMatrix& gamma,
                                                          const RealMatrix& alpha_bar,
                                                          const RealMatrix& gamma_bar, int order) {
  require_order_range(order, 1, 4, "check_internal_then_coupling_specialcase2");
  const int s = alpha.rows();
  if (alpha_bar.rows() != s || gamma_bar.rows() != s || static_cast<int>(b.size()) != s)
    throw ShapeError("specialcase2 coupling: stage counts differ");
  ConditionReport rep;
  const Vec one = ones(s);
  const Vec c = matvec(alpha, one);
  const Vec cbar = matvec(alpha_bar, one);
  const Vec g = matvec(gamma, one);
  const Vec gbar = matvec(gamma_bar, one);
  RealMatrix beta = alpha + gamma;
  RealMatrix beta_bar = alpha_bar + gamma_bar;
  Vec e(s), ebar(s);
  for (int i = 0; i < s; ++i) {
    e[i] = c[i] + g[i];
    ebar[i] = cbar[i] + gbar[i];
  }

  // abscissae prerequisite for the shared-stage structure
  double cmax = 0.0;
  for (int i = 0; i < s; ++i) cmax = std::max(cmax, std::abs(cbar[i] - c[i]));
  add(rep, "cpl.pre.cbar-eq-c", {}, cmax, 0.0);

  if (order >= 3) {
    add(rep, "cpl.row3.b-a-gbar", {}, dot(b, matvec(alpha, gbar)), 0.0);
    add(rep, "cpl.row3.b-abar-g", {}, dot(b, matvec(alpha_bar, g)), 0.0);
    add(rep, "cpl.row3.b-g-gbar", {}, dot(b, matvec(gamma, gbar)), 0.0);
    add(rep, "cpl.row3.b-gbar-g", {}, dot(b, matvec(gamma_bar, g)), 0.0);
    add(rep, "cpl.ros3.b-beta-ebar", {}, dot(b, matvec(beta, ebar)), 1.0 / 6.0);
    add(rep, "cpl.ros3.b-betabar-e", {}, dot(b, matvec(beta_bar, e)), 1.0 / 6.0);
  }
  if (order >= 4) {
    add(rep, "cpl.ros4.b_a-ebar_c", {}, dot(b, hadamard(matvec(alpha, ebar), c)), 0.125);
    add(rep, "cpl.ros4.b_abar-e_c", {}, dot(b, hadamard(matvec(alpha_bar, e), c)), 0.125);
    add(rep, "cpl.ros4.b-bbar-b-e", {}, dot(b, matvec(beta_bar, matvec(beta, e))), 1.0 / 24.0);
    add(rep, "cpl.ros4.b-bbar-bbar-e", {}, dot(b, matvec(beta_bar, matvec(beta_bar, e))),
        1.0 / 24.0);
    add(rep, "cpl.ros4.b-bbar-b-ebar", {}, dot(b, matvec(beta_bar, matvec(beta, ebar))),
        1.0 / 24.0);
    add(rep, "cpl.ros4.b-b-bbar-ebar", {}, dot(b, matvec(beta, matvec(beta_bar, ebar))),
        1.0 / 24.0);
    add(rep, "cpl.ros4.b-b-bbar-e", {}, dot(b, matvec(beta, matvec(beta_bar, e))), 1.0 / 24.0);
    add(rep, "cpl.ros4.b-b-b-ebar", {}, dot(b, matvec(beta, matvec(beta, ebar))), 1.0 / 24.0);
  }
  return rep;
}

namespace {

bool blocks_equal(const RealMatrix& a, const RealMatrix& b, double tol) {
  if (!a.same_shape(b)) return false;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (std::abs(a(i, j) - b(i, j)) > tol) return false;
  return true;
}

}  // namespace

ConditionReport check_imex_coupling(const PartitionedTableau& t, int order, bool exact_jacobian,
                                    bool special_case) {
  require_order_range(order, 1, 4, "check_imex_coupling");
  if (t.n_partitions != 2) throw ShapeError("imex coupling: expects a two-partition tableau");
  for (int m = 0; m < 2; ++m)
    if (t.gamma(0, m).max_abs() != 0.0)
      throw StructureError("imex coupling: first partition must be explicit");
  const auto d = derive_vectors(t);
  const Vec& bE = t.weights[0];
  const Vec& bI = t.weights[1];
  const Vec cE = d.c_at(0, 0);
  const Vec cI = d.c_at(1, 1);
  const Vec gI = d.g_at(1, 1);
  const Vec eI = d.e_at(1, 1);
  ConditionReport rep;
  if (special_case) {
    const double tol = 1e-13;
    if (!blocks_equal(t.alpha(0, 1), t.alpha(0, 0), tol) ||
        !blocks_equal(t.alpha(1, 0), t.alpha(1, 1), tol) ||
        !blocks_equal(t.gamma(1, 0), t.gamma(1, 1), tol))
      throw StructureError("imex coupling: blocks violate the shared-block special case");
    const RealMatrix& aE = t.alpha(0, 0);
    const RealMatrix& aI = t.alpha(1, 1);
    const RealMatrix& gIb = t.gamma(1, 1);
    const Vec& c = cE;  // shared abscissae
    if (!exact_jacobian) {
      if (order >= 3) add(rep, "imex.case1.row3", {}, dot(bE, matvec(aE, gI)), 0.0);
      if (order >= 4) {
        add(rep, "imex.case1.row4.b_ag_c", {}, dot(bE, hadamard(matvec(aE, gI), c)), 0.0);
        add(rep, "imex.case1.row4.b-aE-aE-g", {}, dot(bE, matvec(aE, matvec(aE, gI))), 0.0);
        add(rep, "imex.case1.row4.b-aE-aI-c", {}, dot(bE, matvec(aE, matvec(aI, c))), 1.0 / 24.0);
        add(rep, "imex.case1.row4.b-aE-gI-c", {}, dot(bE, matvec(aE, matvec(gIb, c))), 0.0);
        add(rep, "imex.case1.row4.b-aE-aI-g", {}, dot(bE, matvec(aE, matvec(aI, gI))), 0.0);
        add(rep, "imex.case1.row4.b-aE-gI-g", {}, dot(bE, matvec(aE, matvec(gIb, gI))), 0.0);
        add(rep, "imex.case1.row4.bI-aI-aE-c", {}, dot(bI, matvec(aI, matvec(aE, c))), 1.0 / 24.0);
        add(rep, "imex.case1.row4.bI-gI-aE-c", {}, dot(bI, matvec(gIb, matvec(aE, c))), 0.0);
        add(rep, "imex.case1.row4.bI-aI-aE-g", {}, dot(bI, matvec(aI, matvec(aE, gI))), 0.0);
        add(rep, "imex.case1.row4.bI-gI-aE-g", {}, dot(bI, matvec(gIb, matvec(aE, gI))), 0.0);
      }
    } else {
      RealMatrix betaI = t.beta(1, 1);
      if (order >= 3) {
        add(rep, "imex.case1.ros3.bE-aE-g", {}, dot(bE, matvec(aE, gI)), 0.0);
        add(rep, "imex.case1.ros3.bI-betaI-g", {}, dot(bI, matvec(betaI, gI)), 0.0);
      }
      if (order >= 4) {
        add(rep, "imex.case1.ros4.b_ag_c", {}, dot(bE, hadamard(matvec(aE, gI), c)), 0.0);
        add(rep, "imex.case1.ros4.b-aE-aE-g", {}, dot(bE, matvec(aE, matvec(aE, gI))), 0.0);
        add(rep, "imex.case1.ros4.b-aE-betaI-c", {}, dot(bE, matvec(aE, matvec(betaI, c))),
            1.0 / 24.0);
        add(rep, "imex.case1.ros4.b-aE-betaI-g", {}, dot(bE, matvec(aE, matvec(betaI, gI))), 0.0);
        add(rep, "imex.case1.ros4.bI-betaI-aE-c", {}, dot(bI, matvec(betaI, matvec(aE, c))),
            1.0 / 24.0);
        add(rep, "imex.case1.ros4.bI-betaI-aE-g", {}, dot(bI, matvec(betaI, matvec(aE, gI))), 0.0);
      }
    }
    return rep;
  }

  // general structure (internal consistency assumed for the stated forms)
  if (!exact_jacobian) {
    if (order >= 3) {
      add(rep, "imex.row3.bE-aEI-c", {}, dot(bE, matvec(t.alpha(0, 1), cI)), 1.0 / 6.0);
      add(rep, "imex.row3.bE-aEI-g", {}, dot(bE, matvec(t.alpha(0, 1), gI)), 0.0);
      add(rep, "imex.row3.bI-aIE-c", {}, dot(bI, matvec(t.alpha(1, 0), cE)), 1.0 / 6.0);
      add(rep, "imex.row3.bI-gIE-c", {}, dot(bI, matvec(t.gamma(1, 0), cE)), 0.0);
    }
  } else {
    RealMatrix betaIE = t.beta(1, 0);
    RealMatrix betaII = t.beta(1, 1);
    if (order >= 3) {
      add(rep, "imex.ros3.bE-aEI-e", {}, dot(bE, matvec(t.alpha(0, 1), eI)), 1.0 / 6.0);
      add(rep, "imex.ros3.bI-betaIE-c", {}, dot(bI, matvec(betaIE, cE)), 1.0 / 6.0);
    }
    if (order >= 4) {
      add(rep, "imex.ros4.bE_aEI-e_cE", {}, dot(bE, hadamard(matvec(t.alpha(0, 1), eI), cE)),
          0.125);
      add(rep, "imex.ros4.bI_aIE-c_cI", {}, dot(bI, hadamard(matvec(t.alpha(1, 0), cE), cI)),
          0.125);
      add(rep, "imex.ros4.bE-aEI-cc", {}, dot(bE, matvec(t.alpha(0, 1), hadamard(cI, cI))),
          1.0 / 12.0);
      add(rep, "imex.ros4.bI-betaIE-cc", {}, dot(bI, matvec(betaIE, hadamard(cE, cE))),
          1.0 / 12.0);
      add(rep, "imex.ros4.bE-aEE-aEI-e", {},
          dot(bE, matvec(t.alpha(0, 0), matvec(t.alpha(0, 1), eI))), 1.0 / 24.0);
      add(rep, "imex.ros4.bE-aEI-betaIE-c", {},
          dot(bE, matvec(t.alpha(0, 1), matvec(betaIE, cE))), 1.0 / 24.0);
      add(rep, "imex.ros4.bE-aEI-betaII-e", {},
          dot(bE, matvec(t.alpha(0, 1), matvec(betaII, eI))), 1.0 / 24.0);
      add(rep, "imex.ros4.bI-betaIE-aEE-c", {},
          dot(bI, matvec(betaIE, matvec(t.alpha(0, 0), cE))), 1.0 / 24.0);
      add(rep, "imex.ros4.bI-betaIE-aEI-e", {},
          dot(bI, matvec(betaIE, matvec(t.alpha(0, 1), eI))), 1.0 / 24.0);
      add(rep, "imex.ros4.bI-betaII-betaIE-c", {}, dot(bI, matvec(betaII, matvec(betaIE, cE))),
          1.0 / 24.0);
    }
  }
  return rep;
}

ConditionReport check_dae_algebraic(const PartitionedTableau& t, int diff_partition,
                                    int alg_partition, int order_x, int order_z) {
  require_order_range(order_x, 1, 4, "check_dae_algebraic (differential)");
  require_order_range(order_z, 1, 3, "check_dae_algebraic (algebraic)");
  const int d = diff_partition;
  const int a = alg_partition;
  const auto dv = derive_vectors(t);
  const RealMatrix omega = invert_small(dv.beta(a, a));  // throws on singular beta
  const Vec& bd = t.weights[d];
  const Vec& ba = t.weights[a];
  const Vec cad = dv.c_at(a, d);
  const Vec cdd = dv.c_at(d, d);
  const Vec edd = dv.e_at(d, d);
  const Vec cad2 = hadamard(cad, cad);
  ConditionReport rep;

  // deviation from the differential-stages-first simplifying assumption
  double dev = 0.0;
  RealMatrix bad = dv.beta(a, d);
  RealMatrix baa = dv.beta(a, a);
  for (int i = 0; i < bad.rows(); ++i)
    for (int j = 0; j < bad.cols(); ++j) dev = std::max(dev, std::abs(bad(i, j) - baa(i, j)));
  add(rep, "dae.pre.assumption-a", {a, d}, dev, 0.0);

  if (order_z >= 2) add(rep, "dae.z2", {a, d}, dot(ba, matvec(omega, cad2)), 1.0);
  if (order_z >= 3) {
    add(rep, "dae.z3.c3", {a, d}, dot(ba, matvec(omega, hadamard(cad2, cad))), 1.0);
    add(rep, "dae.z3.ae-c", {a, d},
        dot(ba, matvec(omega, hadamard(matvec(t.alpha(a, d), edd), cad))), 0.5);
    add(rep, "dae.z3.a-omega-c2-c", {a, d},
        dot(ba, matvec(omega, hadamard(matvec(t.alpha(a, a), matvec(omega, cad2)), cad))), 1.0);
  }
  if (order_x >= 3)
    add(rep, "dae.x3", {d, a}, dot(bd, matvec(dv.beta(d, a), matvec(omega, cad2))), 1.0 / 3.0);
  if (order_x >= 4) {
    add(rep, "dae.x4.a-omega-c2_c", {d, a},
        dot(bd, hadamard(matvec(t.alpha(d, a), matvec(omega, cad2)), cdd)), 0.25);
    add(rep, "dae.x4.beta-omega-c3", {d, a},
        dot(bd, matvec(dv.beta(d, a), matvec(omega, hadamard(cad2, cad)))), 0.25);
    add(rep, "dae.x4.beta-omega_c-ae", {d, a},
        dot(bd, matvec(dv.beta(d, a), matvec(omega, hadamard(cad, matvec(t.alpha(a, d), edd))))),
        0.125);
    add(rep, "dae.x4.beta-beta-omega-c2", {d, a},
        dot(bd, matvec(dv.beta(d, d), matvec(dv.beta(d, a), matvec(omega, cad2)))), 1.0 / 12.0);
  }
  return rep;
}

ConditionReport check_inconsistent_ic(const PartitionedTableau& t, int diff_partition,
                                      int alg_partition) {
  const int d = diff_partition;
  const int a = alg_partition;
  const auto dv = derive_vectors(t);
  const RealMatrix omega = invert_small(dv.beta(a, a));
  const Vec o = matvec(omega, ones(t.stage_counts[a]));
  const Vec& bd = t.weights[d];
  const Vec& ba = t.weights[a];
  const Vec cad = dv.c_at(a, d);
  ConditionReport rep;
  add(rep, "ic.z1", {a}, dot(ba, o), 1.0);
  add(rep, "ic.z2", {a, d},
      dot(ba, matvec(omega, hadamard(cad, matvec(t.alpha(a, a), o)))), 1.0);
  add(rep, "ic.x1", {d, a}, dot(bd, matvec(dv.beta(d, a), o)), 1.0);
  add(rep, "ic.x2.c_ao", {d, a}, dot(bd, hadamard(dv.c_at(d, d), matvec(t.alpha(d, a), o))), 0.5);
  add(rep, "ic.x2.bb-o", {d, a}, dot(bd, matvec(dv.beta(d, d), matvec(dv.beta(d, a), o))), 0.5);
  add(rep, "ic.x2.b-omega_c-ao", {d, a},
      dot(bd, matvec(dv.beta(d, a), matvec(omega, hadamard(cad, matvec(t.alpha(a, a), o))))), 0.5);
  return rep;
}

}  // namespace gark
