#include "gark/tableau.hpp"

#include <algorithm>
#include <cstdio>
#include <set>

#include <json.hpp>

namespace gark {

PartitionedTableau PartitionedTableau::embedded_variant() const {
  if (!embedded_weights) throw Error("embedded_variant: method has no embedded weights");
  PartitionedTableau t = *this;
  t.weights = *embedded_weights;
  t.embedded_weights.reset();
  t.claimed_order = claimed_embedded_order;
  t.name = name + "-embedded";
  return t;
}

namespace {

void check_block_shape(const PartitionedTableau& t, const RealMatrix& blk, int q, int m,
                       const char* which, ValidationReport& rep) {
  if (blk.rows() != t.stage_counts[q] || blk.cols() != t.stage_counts[m]) {
    rep.violations.push_back({std::string(which) + " block shape does not match stage counts",
                              q + 1, m + 1, -1, -1});
  }
}

void check_finite(const RealMatrix& blk, int q, int m, const char* which, ValidationReport& rep) {
  for (int i = 0; i < blk.rows(); ++i)
    for (int j = 0; j < blk.cols(); ++j)
      if (!std::isfinite(blk(i, j)))
        rep.violations.push_back(
            {std::string("non-finite entry in ") + which + " block", q + 1, m + 1, i, j});
}

bool strictly_lower(const RealMatrix& m, int* bi, int* bj) {
  for (int i = 0; i < m.rows(); ++i)
    for (int j = i; j < m.cols(); ++j)
      if (m(i, j) != 0.0) {
        *bi = i;
        *bj = j;
        return false;
      }
  return true;
}

bool lower(const RealMatrix& m, int* bi, int* bj) {
  for (int i = 0; i < m.rows(); ++i)
    for (int j = i + 1; j < m.cols(); ++j)
      if (m(i, j) != 0.0) {
        *bi = i;
        *bj = j;
        return false;
      }
  return true;
}

}  // namespace

ValidationReport validate(const PartitionedTableau& t) {
  ValidationReport rep;
  const int n = t.n_partitions;
  if (n <= 0) {
    rep.violations.push_back({"n_partitions must be positive", -1, -1, -1, -1});
    return rep;
  }
  if (static_cast<int>(t.stage_counts.size()) != n) {
    rep.violations.push_back({"stage_counts length must equal n_partitions", -1, -1, -1, -1});
    return rep;
  }
  for (int q = 0; q < n; ++q)
    if (t.stage_counts[q] <= 0)
      rep.violations.push_back({"stage count must be positive", q + 1, -1, -1, -1});
  if (static_cast<int>(t.alpha_blocks.size()) != n * n ||
      static_cast<int>(t.gamma_blocks.size()) != n * n) {
    rep.violations.push_back({"expected N*N alpha and gamma blocks", -1, -1, -1, -1});
    return rep;
  }
  if (static_cast<int>(t.weights.size()) != n) {
    rep.violations.push_back({"expected one weight vector per partition", -1, -1, -1, -1});
    return rep;
  }
  for (int q = 0; q < n; ++q) {
    if (static_cast<int>(t.weights[q].size()) != t.stage_counts[q])
      rep.violations.push_back({"weight vector length mismatch", q + 1, -1, -1, -1});
    for (double w : t.weights[q])
      if (!std::isfinite(w))
        rep.violations.push_back({"non-finite weight entry", q + 1, -1, -1, -1});
  }
  if (t.embedded_weights) {
    if (static_cast<int>(t.embedded_weights->size()) != n)
      rep.violations.push_back({"expected one embedded weight vector per partition", -1, -1, -1, -1});
    else
      for (int q = 0; q < n; ++q)
        if (static_cast<int>((*t.embedded_weights)[q].size()) != t.stage_counts[q])
          rep.violations.push_back({"embedded weight vector length mismatch", q + 1, -1, -1, -1});
  }
  if (!rep.valid()) return rep;

  int bi = 0, bj = 0;
  for (int q = 0; q < n; ++q) {
    for (int m = 0; m < n; ++m) {
      const auto& a = t.alpha(q, m);
      const auto& g = t.gamma(q, m);
      check_block_shape(t, a, q, m, "alpha", rep);
      check_block_shape(t, g, q, m, "gamma", rep);
      check_finite(a, q, m, "alpha", rep);
      check_finite(g, q, m, "gamma", rep);
      if (q == m && !lower(g, &bi, &bj)) {
        char buf[128];
        std::snprintf(buf, sizeof buf, "gamma block (%d,%d) not lower triangular", q + 1, m + 1);
        rep.violations.push_back({buf, q + 1, m + 1, bi, bj});
      }
      if (t.coupling_mode == CouplingMode::Strict) {
        if (!strictly_lower(a, &bi, &bj)) {
          char buf[128];
          const char* what = (bi == bj) ? "diagonal of alpha block (%d,%d) nonzero"
                                        : "alpha block (%d,%d) not strictly lower triangular";
          std::snprintf(buf, sizeof buf, what, q + 1, m + 1);
          rep.violations.push_back({buf, q + 1, m + 1, bi, bj});
        }
        if (q != m && !lower(g, &bi, &bj)) {
          char buf[128];
          std::snprintf(buf, sizeof buf, "gamma block (%d,%d) not lower triangular", q + 1, m + 1);
          rep.violations.push_back({buf, q + 1, m + 1, bi, bj});
        }
      } else {
        // Decoupled: coupling blocks may be lower triangular and the self
        // alpha block may carry a diagonal (diagonally implicit stages);
        // anything above the diagonal can never be ordered.
        if (!lower(a, &bi, &bj)) {
          char buf[128];
          std::snprintf(buf, sizeof buf, "alpha block (%d,%d) not lower triangular", q + 1, m + 1);
          rep.violations.push_back({buf, q + 1, m + 1, bi, bj});
        }
        if (!lower(g, &bi, &bj)) {
          char buf[128];
          std::snprintf(buf, sizeof buf, "gamma block (%d,%d) not lower triangular", q + 1, m + 1);
          rep.violations.push_back({buf, q + 1, m + 1, bi, bj});
        }
      }
    }
  }
  if (rep.valid() && t.coupling_mode == CouplingMode::Decoupled) {
    try {
      decoupled_ordering(t);
    } catch (const NotDecoupledError& e) {
      rep.violations.push_back({std::string("no decoupled stage ordering: ") + e.what(), -1, -1, -1, -1});
    }
  }
  return rep;
}

DerivedVectors derive_vectors(const PartitionedTableau& t) {
  const int n = t.n_partitions;
  DerivedVectors d;
  d.n_partitions = n;
  d.beta_blocks.reserve(n * n);
  d.c.reserve(n * n);
  d.g.reserve(n * n);
  d.e.reserve(n * n);
  for (int m = 0; m < n; ++m) {
    for (int nn = 0; nn < n; ++nn) {
      const auto& a = t.alpha(m, nn);
      const auto& g = t.gamma(m, nn);
      Vec cs(a.rows(), 0.0), gs(g.rows(), 0.0), es(a.rows(), 0.0);
      for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) cs[i] += a(i, j);
        for (int j = 0; j < g.cols(); ++j) gs[i] += g(i, j);
        es[i] = cs[i] + gs[i];
      }
      d.beta_blocks.push_back(a + g);
      d.c.push_back(std::move(cs));
      d.g.push_back(std::move(gs));
      d.e.push_back(std::move(es));
    }
  }
  return d;
}

bool is_internally_consistent(const PartitionedTableau& t, double tol) {
  const auto d = derive_vectors(t);
  const int n = t.n_partitions;
  for (int m = 0; m < n; ++m) {
    for (int nn = 1; nn < n; ++nn) {
      const Vec& c0 = d.c_at(m, 0);
      const Vec& cn = d.c_at(m, nn);
      const Vec& g0 = d.g_at(m, 0);
      const Vec& gn = d.g_at(m, nn);
      for (std::size_t i = 0; i < c0.size(); ++i) {
        if (std::abs(cn[i] - c0[i]) > tol) return false;
        if (std::abs(gn[i] - g0[i]) > tol) return false;
      }
    }
  }
  return true;
}

bool is_stiffly_accurate(const PartitionedTableau& t, double tol) {
  const int n = t.n_partitions;
  const int last = n - 1;
  const int s_last = t.stage_counts[last];
  for (int q = 0; q < n; ++q) {
    RealMatrix beta = t.beta(last, q);
    for (int j = 0; j < t.stage_counts[q]; ++j)
      if (std::abs(t.weights[q][j] - beta(s_last - 1, j)) > tol) return false;
  }
  return true;
}

GlobalTableau assemble_global(const PartitionedTableau& t) {
  const int n = t.n_partitions;
  const int s = t.total_stages();
  GlobalTableau g;
  g.a = RealMatrix(s, s);
  g.g = RealMatrix(s, s);
  g.b.assign(s, 0.0);
  g.offsets.assign(n + 1, 0);
  for (int q = 0; q < n; ++q) g.offsets[q + 1] = g.offsets[q] + t.stage_counts[q];
  for (int q = 0; q < n; ++q) {
    for (int m = 0; m < n; ++m) {
      const auto& a = t.alpha(q, m);
      const auto& gm = t.gamma(q, m);
      for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
          g.a(g.offsets[q] + i, g.offsets[m] + j) = a(i, j);
          g.g(g.offsets[q] + i, g.offsets[m] + j) = gm(i, j);
        }
    }
    for (int i = 0; i < t.stage_counts[q]; ++i) g.b[g.offsets[q] + i] = t.weights[q][i];
  }
  g.b_mat = g.a + g.g;
  return g;
}

std::vector<StageRef> decoupled_ordering(const PartitionedTableau& t) {
  const int n = t.n_partitions;
  std::vector<StageRef> all;
  for (int i = 0; i < *std::max_element(t.stage_counts.begin(), t.stage_counts.end()); ++i)
    for (int q = 0; q < n; ++q)
      if (i < t.stage_counts[q]) all.push_back({q, i});

  auto depends = [&](const StageRef& a, const StageRef& b) {
    // stage a reads stage b through alpha or gamma (self-dependency excluded:
    // the diagonal gamma is the linear solve, a diagonal alpha a Newton solve)
    if (a == b) return false;
    if (b.stage >= t.stage_counts[b.partition]) return false;
    return t.alpha(a.partition, b.partition)(a.stage, b.stage) != 0.0 ||
           t.gamma(a.partition, b.partition)(a.stage, b.stage) != 0.0;
  };

  auto order_valid = [&](const std::vector<StageRef>& order) {
    std::set<std::pair<int, int>> done;
    for (const auto& st : order) {
      for (const auto& other : all) {
        if (depends(st, other) && !done.count({other.partition, other.stage})) return false;
      }
      done.insert({st.partition, st.stage});
    }
    return true;
  };

  if (order_valid(all)) return all;  // round-robin sweep

  // Kahn topological sort with deterministic (stage, partition) tie-breaking.
  std::vector<StageRef> order;
  std::set<std::pair<int, int>> done;
  const std::size_t total = all.size();
  while (order.size() < total) {
    bool progress = false;
    for (const auto& st : all) {
      if (done.count({st.partition, st.stage})) continue;
      bool ready = true;
      for (const auto& other : all)
        if (depends(st, other) && !done.count({other.partition, other.stage})) {
          ready = false;
          break;
        }
      if (ready) {
        order.push_back(st);
        done.insert({st.partition, st.stage});
        progress = true;
      }
    }
    if (!progress)
      throw NotDecoupledError("stage dependency graph has a cycle (mutually implicit stages)");
  }
  return order;
}

PartitionedTableau select_partitions(const PartitionedTableau& t, const std::vector<int>& parts) {
  PartitionedTableau r;
  const int n = static_cast<int>(parts.size());
  for (int p : parts)
    if (p < 0 || p >= t.n_partitions) throw ShapeError("select_partitions: index out of range");
  r.name = t.name + "-sub";
  r.method_class = t.method_class;
  r.coupling_mode = t.coupling_mode;
  r.n_partitions = n;
  r.claimed_order = t.claimed_order;
  r.claimed_embedded_order = t.claimed_embedded_order;
  for (int p : parts) r.stage_counts.push_back(t.stage_counts[p]);
  for (int q = 0; q < n; ++q)
    for (int m = 0; m < n; ++m) {
      r.alpha_blocks.push_back(t.alpha(parts[q], parts[m]));
      r.gamma_blocks.push_back(t.gamma(parts[q], parts[m]));
    }
  for (int p : parts) r.weights.push_back(t.weights[p]);
  if (t.embedded_weights) {
    std::vector<Vec> eb;
    for (int p : parts) eb.push_back((*t.embedded_weights)[p]);
    r.embedded_weights = std::move(eb);
  }
  return r;
}

// ---- JSON schema ------------------------------------------------------------

namespace {

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

nlohmann::json matrix_to_json(const RealMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(fmt17(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

double number_from_json(const nlohmann::json& j) {
  if (j.is_string()) return std::strtod(j.get<std::string>().c_str(), nullptr);
  return j.get<double>();
}

RealMatrix matrix_from_json(const nlohmann::json& j, int rows, int cols) {
  RealMatrix m(rows, cols);
  if (static_cast<int>(j.size()) != rows) throw ShapeError("tableau json: matrix row count");
  for (int i = 0; i < rows; ++i) {
    if (static_cast<int>(j[i].size()) != cols) throw ShapeError("tableau json: matrix col count");
    for (int c = 0; c < cols; ++c) m(i, c) = number_from_json(j[i][c]);
  }
  return m;
}

}  // namespace

std::string tableau_to_json(const PartitionedTableau& t) {
  nlohmann::json j;
  j["name"] = t.name;
  j["class"] = t.method_class == MethodClass::Ros ? "ros" : "row";
  j["coupling"] = t.coupling_mode == CouplingMode::Strict ? "strict" : "decoupled";
  j["partitions"] = t.n_partitions;
  j["stages"] = t.stage_counts;
  nlohmann::json alpha = nlohmann::json::object();
  nlohmann::json gamma = nlohmann::json::object();
  for (int q = 0; q < t.n_partitions; ++q)
    for (int m = 0; m < t.n_partitions; ++m) {
      std::string key = std::to_string(q + 1) + "," + std::to_string(m + 1);
      alpha[key] = matrix_to_json(t.alpha(q, m));
      gamma[key] = matrix_to_json(t.gamma(q, m));
    }
  j["alpha"] = alpha;
  j["gamma"] = gamma;
  nlohmann::json b = nlohmann::json::array();
  for (const auto& w : t.weights) {
    nlohmann::json row = nlohmann::json::array();
    for (double v : w) row.push_back(fmt17(v));
    b.push_back(row);
  }
  j["b"] = b;
  if (t.embedded_weights) {
    nlohmann::json bh = nlohmann::json::array();
    for (const auto& w : *t.embedded_weights) {
      nlohmann::json row = nlohmann::json::array();
      for (double v : w) row.push_back(fmt17(v));
      bh.push_back(row);
    }
    j["bhat"] = bh;
  }
  j["claimed_order"] = t.claimed_order;
  j["claimed_embedded_order"] = t.claimed_embedded_order;
  return j.dump(2);
}

PartitionedTableau tableau_from_json(const std::string& json_text) {
  nlohmann::json j = nlohmann::json::parse(json_text);
  PartitionedTableau t;
  t.name = j.value("name", "");
  const std::string cls = j.value("class", "ros");
  t.method_class = cls == "row" ? MethodClass::Row : MethodClass::Ros;
  const std::string cm = j.value("coupling", "strict");
  t.coupling_mode = cm == "decoupled" ? CouplingMode::Decoupled : CouplingMode::Strict;
  t.n_partitions = j.at("partitions").get<int>();
  t.stage_counts = j.at("stages").get<std::vector<int>>();
  if (static_cast<int>(t.stage_counts.size()) != t.n_partitions)
    throw ShapeError("tableau json: stages length != partitions");
  const int n = t.n_partitions;
  t.alpha_blocks.resize(n * n);
  t.gamma_blocks.resize(n * n);
  for (int q = 0; q < n; ++q)
    for (int m = 0; m < n; ++m) {
      std::string key = std::to_string(q + 1) + "," + std::to_string(m + 1);
      t.alpha_blocks[q * n + m] =
          matrix_from_json(j.at("alpha").at(key), t.stage_counts[q], t.stage_counts[m]);
      t.gamma_blocks[q * n + m] =
          matrix_from_json(j.at("gamma").at(key), t.stage_counts[q], t.stage_counts[m]);
    }
  for (int q = 0; q < n; ++q) {
    Vec w;
    for (const auto& v : j.at("b")[q]) w.push_back(number_from_json(v));
    if (static_cast<int>(w.size()) != t.stage_counts[q])
      throw ShapeError("tableau json: b length mismatch");
    t.weights.push_back(std::move(w));
  }
  if (j.contains("bhat") && !j["bhat"].is_null()) {
    std::vector<Vec> eb;
    for (int q = 0; q < n; ++q) {
      Vec w;
      for (const auto& v : j.at("bhat")[q]) w.push_back(number_from_json(v));
      if (static_cast<int>(w.size()) != t.stage_counts[q])
        throw ShapeError("tableau json: bhat length mismatch");
      eb.push_back(std::move(w));
    }
    t.embedded_weights = std::move(eb);
  }
  t.claimed_order = j.value("claimed_order", 0);
  t.claimed_embedded_order = j.value("claimed_embedded_order", 0);
  return t;
}

}  // namespace gark
