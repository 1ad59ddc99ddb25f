#include "gark/methods.hpp"

#include <cmath>

#include "gark/errors.hpp"

namespace gark {

double row324_gamma() {
  double g = 0.44;
  for (int it = 0; it < 100; ++it) {
    const double p = ((6 * g - 18) * g + 9) * g - 1;
    const double dp = (18 * g - 36) * g + 9;
    const double gn = g - p / dp;
    if (gn == g) break;
    g = gn;
  }
  return g;
}

namespace {

using M = RealMatrix;

M zeros(int n) { return M(n, n); }

// fraction helper; coefficients are entered as exact rationals so that
// transcription slips show up as order-condition residuals
double fr(double num, double den) { return num / den; }

struct BaseScheme {
  M alpha;
  M gamma;
  Vec b;
};

BaseScheme ros2_base() {
  const double g = 1.0 - std::sqrt(2.0) / 2.0;
  BaseScheme s;
  s.alpha = M::from_rows({{0, 0}, {1, 0}});
  s.gamma = M::from_rows({{g, 0}, {-g, g}});
  s.b = {1.0 - g, g};
  return s;
}

BaseScheme erk_trapezoidal_base() {
  BaseScheme s;
  s.alpha = M::from_rows({{0, 0}, {1, 0}});
  s.gamma = zeros(2);
  s.b = {0.5, 0.5};
  return s;
}

BaseScheme irk_trapezoidal_base() {
  BaseScheme s;
  s.alpha = M::from_rows({{0, 0}, {0.5, 0.5}});
  s.gamma = zeros(2);
  s.b = {0.5, 0.5};
  return s;
}

PartitionedTableau single_partition(const BaseScheme& s, std::string name, MethodClass cls,
                                    CouplingMode mode, int order) {
  PartitionedTableau t;
  t.name = std::move(name);
  t.method_class = cls;
  t.coupling_mode = mode;
  t.n_partitions = 1;
  t.stage_counts = {s.alpha.rows()};
  t.alpha_blocks = {s.alpha};
  t.gamma_blocks = {s.gamma};
  t.weights = {s.b};
  t.claimed_order = order;
  return t;
}

PartitionedTableau imex_ros22_tableau() {
  const auto et = erk_trapezoidal_base();
  const auto it = irk_trapezoidal_base();
  const auto r2 = ros2_base();
  PartitionedTableau t;
  t.name = "imex-ros22";
  t.method_class = MethodClass::Ros;
  t.coupling_mode = CouplingMode::Decoupled;
  t.n_partitions = 3;
  t.stage_counts = {2, 2, 2};
  // row 1: explicit trapezoidal couples to every stage set
  // row 2: implicit trapezoidal, except the Rosenbrock stages enter explicitly
  // row 3: ROS2 alpha and gamma applied across the board
  t.alpha_blocks = {et.alpha, et.alpha, et.alpha,
                    it.alpha, it.alpha, et.alpha,
                    r2.alpha, r2.alpha, r2.alpha};
  t.gamma_blocks = {zeros(2), zeros(2), zeros(2),
                    zeros(2), zeros(2), zeros(2),
                    r2.gamma, r2.gamma, r2.gamma};
  t.weights = {et.b, it.b, r2.b};
  t.claimed_order = 2;
  return t;
}

BaseScheme row324_explicit(double g) {
  BaseScheme s;
  s.alpha = M::from_rows({
      {0, 0, 0, 0},
      {2 * g, 0, 0, 0},
      {-15 * g * g / 16 + 103 * g / 32 - fr(5, 8), 15 * g * g / 16 - 87 * g / 32 + fr(9, 8), 0, 0},
      {-81 * g * g / 272 + 111 * g / 136 + fr(265, 544), g * g / 16 + g / 8 - fr(25, 32),
       4 * g * g / 17 - 16 * g / 17 + fr(22, 17), 0},
  });
  s.gamma = zeros(4);
  s.b = {-9 * g * g / 34 + 19 * g / 34 + fr(3, 68), 5 * g * g / 2 - 13 * g / 2 + fr(5, 4),
         -38 * g * g / 17 + 84 * g / 17 - fr(5, 17), g};
  return s;
}

BaseScheme row324_implicit(double g) {
  BaseScheme s;
  s.alpha = M::from_rows({
      {0, 0, 0, 0},
      {2 * g, 0, 0, 0},
      {-9 * g * g / 8 + 115 * g / 32 - fr(19, 32), 9 * g * g / 8 - 99 * g / 32 + fr(35, 32), 0, 0},
      {9 * g * g / 34 - 19 * g / 34 + fr(31, 68), -g * g / 2 + 3 * g / 2 - fr(3, 4),
       4 * g * g / 17 - 16 * g / 17 + fr(22, 17), 0},
  });
  s.gamma = M::from_rows({
      {g, 0, 0, 0},
      {-2 * g, g, 0, 0},
      {3 * g * g / 2 - 157 * g / 32 + fr(33, 32), -3 * g * g / 4 + 57 * g / 32 - fr(21, 32), g, 0},
      {-9 * g * g / 17 + 19 * g / 17 - fr(7, 17), 3 * g * g - 8 * g + 2,
       -42 * g * g / 17 + 100 * g / 17 - fr(27, 17), g},
  });
  s.b = row324_explicit(g).b;
  return s;
}

Vec row324_bhat(double g) {
  return {-57 * g * g / 272 + 109 * g / 272 + fr(9, 136), 47 * g * g / 16 - 31 * g / 4 + fr(23, 16),
          -40 * g * g / 17 + 201 * g / 34 - fr(15, 34), -3 * g * g / 8 + 23 * g / 16 - fr(1, 16)};
}

BaseScheme row325_base() {
  BaseScheme s;
  s.alpha = M::from_rows({
      {0, 0, 0, 0, 0},
      {fr(1, 2), 0, 0, 0, 0},
      {fr(5062, 13725), fr(4088, 13725), 0, 0, 0},
      {fr(173067, 636265), fr(495828, 636265), fr(-24705, 127253), 0, 0},
      {fr(30859, 262800), fr(-547, 21900), fr(183, 146), fr(-18179, 52560), 0},
  });
  s.gamma = M::from_rows({
      {fr(1, 4), 0, 0, 0, 0},
      {fr(-1, 2), fr(1, 4), 0, 0, 0},
      {fr(-4762, 13725), fr(-2563, 13725), fr(1, 4), 0, 0},
      {fr(-156792, 636265), fr(-685353, 636265), fr(82350, 127253), fr(1, 4), 0},
      {fr(22969, 175200), fr(-3523, 21900), fr(183, 4672), fr(-18179, 70080), fr(1, 4)},
  });
  s.b = {fr(5225, 21024), fr(-407, 2190), fr(6039, 4672), fr(-127253, 210240), fr(1, 4)};
  return s;
}

Vec row325_bhat() {
  return {fr(9095, 539616), fr(27387, 56210), fr(421083, 359744), fr(-812861, 770880), fr(117, 308)};
}

BaseScheme ros436_explicit() {
  BaseScheme s;
  s.alpha = M::from_rows({
      {0, 0, 0, 0, 0, 0},
      {fr(1, 2), 0, 0, 0, 0, 0},
      {fr(4761, 11050), fr(2592, 5525), 0, 0, 0, 0},
      {fr(3779, 99450), fr(12931, 44200), fr(5, 72), 0, 0, 0},
      {fr(-9468553, 45647550), fr(18193697, 30431700), fr(-92843, 413100), fr(1352, 2025), 0, 0},
      {fr(5613193, 5967000), fr(261179, 884000), fr(18091, 108000), fr(-13609, 19500), fr(153, 520), 0},
  });
  s.gamma = zeros(6);
  s.b = {fr(113, 720), fr(37, 96), fr(-125, 288), fr(125, 624), fr(459, 1040), fr(1, 4)};
  return s;
}

BaseScheme ros436_implicit() {
  BaseScheme s;
  s.alpha = M::from_rows({
      {0, 0, 0, 0, 0, 0},
      {fr(1, 2), 0, 0, 0, 0, 0},
      {fr(87, 140), fr(39, 140), 0, 0, 0, 0},
      {fr(-331, 1260), fr(17, 28), fr(1, 18), 0, 0, 0},
      {fr(84025, 231336), fr(-755, 9639), fr(-425, 1944), fr(4225, 5508), 0, 0},
      {fr(1091, 2160), fr(29, 32), fr(145, 864), fr(-545, 624), fr(153, 520), 0},
  });
  s.gamma = M::from_rows({
      {fr(1, 4), 0, 0, 0, 0, 0},
      {fr(-1, 2), fr(1, 4), 0, 0, 0, 0},
      {fr(-183, 700), fr(57, 700), fr(1, 4), 0, 0, 0},
      {fr(257, 700), fr(-731, 1400), fr(-1, 8), fr(1, 4), 0, 0},
      {fr(33925, 231336), fr(45835, 77112), fr(2725, 16524), fr(-1300, 1377), fr(1, 4), 0},
      {fr(-47, 135), fr(-25, 48), fr(-65, 108), fr(335, 312), fr(153, 1040), fr(1, 4)},
  });
  s.b = ros436_explicit().b;
  return s;
}

Vec ros436_bhat() {
  return {fr(433321, 3204900), fr(121913, 569760), fr(-25667, 1025568),
          fr(6024, 15431),     fr(965889, 6172400), fr(1531, 11870)};
}

bool block_equal(const M& a, const M& b) {
  if (!a.same_shape(b)) return false;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (a(i, j) != b(i, j)) return false;
  return true;
}

bool block_zero(const M& a) {
  for (const double v : a.data())
    if (v != 0.0) return false;
  return true;
}

}  // namespace

PartitionedTableau compose_imex_special_case(const PartitionedTableau& erk,
                                             const PartitionedTableau& rosw, bool shared_b) {
  if (erk.n_partitions != 1 || rosw.n_partitions != 1)
    throw ShapeError("compose_imex_special_case: expects single-partition inputs");
  if (erk.stage_counts[0] != rosw.stage_counts[0])
    throw ShapeError("compose_imex_special_case: stage counts differ");
  if (!block_zero(erk.gamma(0, 0)))
    throw StructureError("compose_imex_special_case: first argument must be explicit");
  if (shared_b) {
    for (int i = 0; i < erk.stage_counts[0]; ++i)
      if (erk.weights[0][i] != rosw.weights[0][i])
        throw StructureError("compose_imex_special_case: shared_b requires equal weights");
  }
  const int s = erk.stage_counts[0];
  PartitionedTableau t;
  t.name = erk.name + "+" + rosw.name;
  t.method_class = rosw.method_class;
  t.coupling_mode = CouplingMode::Strict;
  t.n_partitions = 2;
  t.stage_counts = {s, s};
  t.alpha_blocks = {erk.alpha(0, 0), erk.alpha(0, 0), rosw.alpha(0, 0), rosw.alpha(0, 0)};
  t.gamma_blocks = {M(s, s), M(s, s), rosw.gamma(0, 0), rosw.gamma(0, 0)};
  t.weights = {erk.weights[0], rosw.weights[0]};
  if (erk.embedded_weights && rosw.embedded_weights)
    t.embedded_weights = std::vector<Vec>{(*erk.embedded_weights)[0], (*rosw.embedded_weights)[0]};
  t.claimed_order = std::min(erk.claimed_order, rosw.claimed_order);
  t.claimed_embedded_order = std::min(erk.claimed_embedded_order, rosw.claimed_embedded_order);
  return t;
}

MethodCard make_card(PartitionedTableau t) {
  MethodCard card;
  const int n = t.n_partitions;
  card.roles.resize(n);
  for (int q = 0; q < n; ++q) {
    bool any_gamma = false;
    for (int m = 0; m < n; ++m)
      if (!block_zero(t.gamma(q, m))) any_gamma = true;
    bool alpha_diag = false;
    const auto& aqq = t.alpha(q, q);
    for (int i = 0; i < aqq.rows(); ++i)
      if (aqq(i, i) != 0.0) alpha_diag = true;
    if (alpha_diag)
      card.roles[q] = PartitionRole::DiagonallyImplicit;
    else if (any_gamma)
      card.roles[q] = PartitionRole::LinearlyImplicit;
    else
      card.roles[q] = PartitionRole::Explicit;
  }
  if (n == 2 && card.roles[0] == PartitionRole::Explicit) {
    card.imex_case1 = block_equal(t.alpha(0, 1), t.alpha(0, 0)) &&
                      block_equal(t.alpha(1, 0), t.alpha(1, 1)) &&
                      block_equal(t.gamma(1, 0), t.gamma(1, 1)) && block_zero(t.gamma(0, 0)) &&
                      block_zero(t.gamma(0, 1));
  }
  card.shared_b = true;
  for (int q = 1; q < n && card.shared_b; ++q) {
    if (t.weights[q].size() != t.weights[0].size()) card.shared_b = false;
    else
      for (std::size_t i = 0; i < t.weights[0].size(); ++i)
        if (t.weights[q][i] != t.weights[0][i]) card.shared_b = false;
  }
  if (n == 1) card.shared_b = false;
  card.tableau = std::move(t);
  return card;
}

MethodCard select_card(const MethodCard& card, const std::vector<int>& parts) {
  MethodCard sub = make_card(select_partitions(card.tableau, parts));
  sub.dae_suitable = card.dae_suitable;
  for (std::size_t i = 0; i < parts.size(); ++i) sub.roles[i] = card.roles[parts[i]];
  return sub;
}

MethodCard two_way_imex_form(const MethodCard& card) {
  const int n = card.tableau.n_partitions;
  if (n == 2) return card;
  if (n < 2) throw ShapeError("two_way_imex_form: method has a single partition");
  if (card.roles.front() != PartitionRole::Explicit ||
      card.roles.back() != PartitionRole::LinearlyImplicit)
    throw StructureError(
        "two_way_imex_form: first partition must be explicit and last linearly implicit");
  MethodCard sub = select_card(card, {0, n - 1});
  sub.tableau.name = card.tableau.name;
  return sub;
}

MethodCard builtin(const std::string& name) {
  if (name == "ros2") {
    MethodCard card = make_card(
        single_partition(ros2_base(), "ros2", MethodClass::Ros, CouplingMode::Strict, 2));
    card.notes = "two-stage L-stable stiffly accurate Rosenbrock scheme";
    return card;
  }
  if (name == "erk-trapezoidal") {
    return make_card(single_partition(erk_trapezoidal_base(), "erk-trapezoidal", MethodClass::Row,
                                      CouplingMode::Strict, 2));
  }
  if (name == "irk-trapezoidal") {
    MethodCard card = make_card(single_partition(
        irk_trapezoidal_base(), "irk-trapezoidal", MethodClass::Row, CouplingMode::Decoupled, 2));
    return card;
  }
  if (name == "imex-ros22") {
    MethodCard card = make_card(imex_ros22_tableau());
    card.dae_suitable = true;
    card.notes =
        "explicit/implicit trapezoidal + ROS2 multimethod; no embedded weights, fixed-step or "
        "step-doubling only; two-way IMEX form via partitions {1,3}";
    return card;
  }
  if (name == "imex-row3-2-4") {
    const double g = row324_gamma();
    auto e = row324_explicit(g);
    auto i = row324_implicit(g);
    PartitionedTableau erk =
        single_partition(e, "row324-erk", MethodClass::Row, CouplingMode::Strict, 3);
    PartitionedTableau row =
        single_partition(i, "row324-row", MethodClass::Row, CouplingMode::Strict, 3);
    erk.embedded_weights = std::vector<Vec>{row324_bhat(g)};
    row.embedded_weights = std::vector<Vec>{row324_bhat(g)};
    erk.claimed_embedded_order = row.claimed_embedded_order = 2;
    PartitionedTableau t = compose_imex_special_case(erk, row, true);
    t.name = "imex-row3-2-4";
    t.claimed_order = 3;
    t.claimed_embedded_order = 2;
    MethodCard card = make_card(std::move(t));
    card.dae_suitable = true;
    return card;
  }
  if (name == "imex-row3-2-5") {
    auto base = row325_base();
    BaseScheme expl{base.alpha, zeros(5), base.b};
    PartitionedTableau erk =
        single_partition(expl, "row325-erk", MethodClass::Row, CouplingMode::Strict, 3);
    PartitionedTableau row =
        single_partition(base, "row325-row", MethodClass::Row, CouplingMode::Strict, 3);
    erk.embedded_weights = std::vector<Vec>{row325_bhat()};
    row.embedded_weights = std::vector<Vec>{row325_bhat()};
    erk.claimed_embedded_order = row.claimed_embedded_order = 2;
    PartitionedTableau t = compose_imex_special_case(erk, row, true);
    t.name = "imex-row3-2-5";
    t.claimed_order = 3;
    t.claimed_embedded_order = 2;
    MethodCard card = make_card(std::move(t));
    card.dae_suitable = true;
    return card;
  }
  if (name == "imex-ros4-3-6") {
    auto e = ros436_explicit();
    auto i = ros436_implicit();
    PartitionedTableau erk =
        single_partition(e, "ros436-erk", MethodClass::Ros, CouplingMode::Strict, 4);
    PartitionedTableau ros =
        single_partition(i, "ros436-ros", MethodClass::Ros, CouplingMode::Strict, 4);
    erk.embedded_weights = std::vector<Vec>{ros436_bhat()};
    ros.embedded_weights = std::vector<Vec>{ros436_bhat()};
    erk.claimed_embedded_order = ros.claimed_embedded_order = 3;
    PartitionedTableau t = compose_imex_special_case(erk, ros, true);
    t.name = "imex-ros4-3-6";
    t.method_class = MethodClass::Ros;
    t.claimed_order = 4;
    t.claimed_embedded_order = 3;
    MethodCard card = make_card(std::move(t));
    card.dae_suitable = true;
    return card;
  }
  throw UnknownMethodError("unknown method: " + name);
}

std::vector<std::string> builtin_names() {
  return {"ros2",           "imex-ros22",     "imex-row3-2-4", "imex-row3-2-5",
          "imex-ros4-3-6",  "erk-trapezoidal", "irk-trapezoidal"};
}

}  // namespace gark
