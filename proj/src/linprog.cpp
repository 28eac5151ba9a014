#include "lcr/linprog.hpp"

#include <algorithm>
#include <stdexcept>

namespace lcr {

namespace {

// Dense exact tableau. Column layout: expanded structural columns first
// (free variables are split x = xp - xn), then one slack per row, then an
// optional phase-1 artificial column. Last column of each row is the rhs.
struct Tableau {
  int m = 0;      // constraint rows
  int ncols = 0;  // columns excluding rhs
  int banned = -1;
  std::vector<std::vector<Rational>> t;
  std::vector<Rational> obj;  // obj[j] = z_j - c_j, obj[ncols] = objective value
  std::vector<int> basis;

  void pivot(int row, int col) {
    const Rational piv = t[row][col];
    for (auto& v : t[row]) v /= piv;
    for (int i = 0; i < m; ++i) {
      if (i == row || t[i][col].is_zero()) continue;
      const Rational f = t[i][col];
      for (int j = 0; j <= ncols; ++j) t[i][j] -= f * t[row][j];
    }
    if (!obj[col].is_zero()) {
      const Rational f = obj[col];
      for (int j = 0; j <= ncols; ++j) obj[j] -= f * t[row][j];
    }
    basis[row] = col;
  }

  // Bland's rule: entering column = smallest index with negative reduced
  // cost, leaving row = minimum ratio with ties broken by smallest basic
  // variable index. Returns the entering column if unbounded, -1 at optimum.
  int run_simplex() {
    for (;;) {
      int enter = -1;
      for (int j = 0; j < ncols; ++j) {
        if (j == banned) continue;
        if (obj[j].sign() < 0) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return -1;
      int leave = -1;
      Rational best;
      for (int i = 0; i < m; ++i) {
        if (t[i][enter].sign() <= 0) continue;
        Rational ratio = t[i][ncols] / t[i][enter];
        if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave < 0) return enter;
      pivot(leave, enter);
    }
  }

  Rational column_value(int col) const {
    for (int i = 0; i < m; ++i) {
      if (basis[i] == col) return t[i][ncols];
    }
    return Rational{};
  }
};

Rational dot(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  Rational s;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void verify_primal_feasible(const LinearProgram& lp, const std::vector<Rational>& x) {
  for (std::size_t j = 0; j < lp.num_vars(); ++j) {
    if (lp.signs[j] == VarSign::NonNegative && x[j].sign() < 0)
      throw std::logic_error("lp: point violates a sign constraint");
  }
  for (std::size_t i = 0; i < lp.num_rows(); ++i) {
    if (dot(lp.rows[i], x) > lp.rhs[i]) throw std::logic_error("lp: point violates a row");
  }
}

void verify_optimal(const LinearProgram& lp, const LpOptimal& r) {
  verify_primal_feasible(lp, r.point);
  if (dot(lp.objective, r.point) != r.value)
    throw std::logic_error("lp: point does not attain the reported value");
  Rational dual_value;
  for (std::size_t i = 0; i < lp.num_rows(); ++i) {
    if (r.duals[i].sign() < 0) throw std::logic_error("lp: negative dual multiplier");
    dual_value += r.duals[i] * lp.rhs[i];
  }
  if (dual_value != r.value) throw std::logic_error("lp: strong duality violated");
  for (std::size_t j = 0; j < lp.num_vars(); ++j) {
    Rational s;
    for (std::size_t i = 0; i < lp.num_rows(); ++i) s += r.duals[i] * lp.rows[i][j];
    if (lp.signs[j] == VarSign::Free) {
      if (s != lp.objective[j]) throw std::logic_error("lp: dual infeasible on free column");
    } else if (s < lp.objective[j]) {
      throw std::logic_error("lp: dual infeasible");
    }
  }
}

void verify_infeasible(const LinearProgram& lp, const LpInfeasible& r) {
  Rational ydotb;
  for (std::size_t i = 0; i < lp.num_rows(); ++i) {
    if (r.farkas[i].sign() < 0) throw std::logic_error("lp: negative Farkas multiplier");
    ydotb += r.farkas[i] * lp.rhs[i];
  }
  if (ydotb.sign() >= 0) throw std::logic_error("lp: Farkas certificate has y.rhs >= 0");
  for (std::size_t j = 0; j < lp.num_vars(); ++j) {
    Rational s;
    for (std::size_t i = 0; i < lp.num_rows(); ++i) s += r.farkas[i] * lp.rows[i][j];
    if (lp.signs[j] == VarSign::Free) {
      if (!s.is_zero()) throw std::logic_error("lp: Farkas certificate nonzero on free column");
    } else if (s.sign() < 0) {
      throw std::logic_error("lp: Farkas certificate negative on column");
    }
  }
}

void verify_unbounded(const LinearProgram& lp, const LpUnbounded& r) {
  verify_primal_feasible(lp, r.point);
  if (dot(lp.objective, r.ray).sign() <= 0)
    throw std::logic_error("lp: ray does not improve the objective");
  for (std::size_t j = 0; j < lp.num_vars(); ++j) {
    if (lp.signs[j] == VarSign::NonNegative && r.ray[j].sign() < 0)
      throw std::logic_error("lp: ray violates a sign constraint");
  }
  for (std::size_t i = 0; i < lp.num_rows(); ++i) {
    if (dot(lp.rows[i], r.ray).sign() > 0) throw std::logic_error("lp: ray leaves a row");
  }
}

}  // namespace

LpOutcome lp_optimize(const LinearProgram& lp) {
  const std::size_t n = lp.num_vars();
  const std::size_t m = lp.num_rows();
  if (lp.signs.size() != n || lp.rhs.size() != m)
    throw std::invalid_argument("lp: inconsistent dimensions");
  for (const auto& row : lp.rows) {
    if (row.size() != n) throw std::invalid_argument("lp: row of wrong width");
  }

  // Expand free variables into non-negative pairs.
  std::vector<int> pos_col(n), neg_col(n, -1);
  int n_struct = 0;
  for (std::size_t j = 0; j < n; ++j) {
    pos_col[j] = n_struct++;
    if (lp.signs[j] == VarSign::Free) neg_col[j] = n_struct++;
  }
  const int slack0 = n_struct;
  const int mi = static_cast<int>(m);
  bool need_phase1 = false;
  for (const auto& b : lp.rhs) {
    if (b.sign() < 0) need_phase1 = true;
  }
  const int x0col = need_phase1 ? slack0 + mi : -1;

  Tableau tab;
  tab.m = mi;
  tab.ncols = slack0 + mi + (need_phase1 ? 1 : 0);
  tab.t.assign(m, std::vector<Rational>(tab.ncols + 1));
  tab.basis.resize(m);
  for (int i = 0; i < mi; ++i) {
    auto& row = tab.t[i];
    for (std::size_t j = 0; j < n; ++j) {
      row[pos_col[j]] = lp.rows[i][j];
      if (neg_col[j] >= 0) row[neg_col[j]] = -lp.rows[i][j];
    }
    row[slack0 + i] = 1;
    if (need_phase1) row[x0col] = -1;
    row[tab.ncols] = lp.rhs[i];
    tab.basis[i] = slack0 + i;
  }

  if (need_phase1) {
    // maximize -x0; with the all-slack basis the reduced-cost row is -c.
    tab.obj.assign(tab.ncols + 1, Rational{});
    tab.obj[x0col] = 1;
    int worst = 0;
    for (int i = 1; i < mi; ++i) {
      if (tab.t[i][tab.ncols] < tab.t[worst][tab.ncols]) worst = i;
    }
    tab.pivot(worst, x0col);
    if (tab.run_simplex() >= 0) throw std::logic_error("lp: phase 1 unbounded");
    if (tab.obj[tab.ncols].sign() < 0) {
      LpInfeasible out;
      out.farkas.resize(m);
      for (std::size_t i = 0; i < m; ++i) out.farkas[i] = tab.obj[slack0 + static_cast<int>(i)];
      verify_infeasible(lp, out);
      return out;
    }
    // Drive the artificial variable out of the basis if it is stuck at zero.
    for (int i = 0; i < mi; ++i) {
      if (tab.basis[i] != x0col) continue;
      for (int c = 0; c < tab.ncols; ++c) {
        if (c != x0col && !tab.t[i][c].is_zero()) {
          tab.pivot(i, c);
          break;
        }
      }
      break;
    }
    tab.banned = x0col;
  }

  // Phase 2 objective over expanded columns.
  std::vector<Rational> cost(tab.ncols);
  for (std::size_t j = 0; j < n; ++j) {
    cost[pos_col[j]] = lp.objective[j];
    if (neg_col[j] >= 0) cost[neg_col[j]] = -lp.objective[j];
  }
  tab.obj.assign(tab.ncols + 1, Rational{});
  for (int jc = 0; jc < tab.ncols; ++jc) tab.obj[jc] = -cost[jc];
  for (int i = 0; i < mi; ++i) {
    const Rational cb = cost[tab.basis[i]];
    if (cb.is_zero()) continue;
    for (int jc = 0; jc <= tab.ncols; ++jc) tab.obj[jc] += cb * tab.t[i][jc];
  }

  const int unbounded_col = tab.run_simplex();

  auto extract_point = [&] {
    std::vector<Rational> x(n);
    for (std::size_t j = 0; j < n; ++j) {
      x[j] = tab.column_value(pos_col[j]);
      if (neg_col[j] >= 0) x[j] -= tab.column_value(neg_col[j]);
    }
    return x;
  };

  if (unbounded_col >= 0) {
    std::vector<Rational> d(tab.ncols);
    d[unbounded_col] = 1;
    for (int i = 0; i < mi; ++i) d[tab.basis[i]] = -tab.t[i][unbounded_col];
    LpUnbounded out;
    out.point = extract_point();
    out.ray.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      out.ray[j] = d[pos_col[j]];
      if (neg_col[j] >= 0) out.ray[j] -= d[neg_col[j]];
    }
    verify_unbounded(lp, out);
    return out;
  }

  LpOptimal out;
  out.value = tab.obj[tab.ncols];
  out.point = extract_point();
  out.duals.resize(m);
  for (std::size_t i = 0; i < m; ++i) out.duals[i] = tab.obj[slack0 + static_cast<int>(i)];
  verify_optimal(lp, out);
  return out;
}

}  // namespace lcr
