#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace greedylb {

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

enum class Rel { Le, Eq, Ge };

/// maximize c^T x subject to the rows, x >= 0 componentwise.
/// Free variables are handled by the callers via sign splitting.
template <class T>
struct LinearProgram {
  int num_vars = 0;
  std::vector<T> objective;  // size num_vars

  struct Row {
    std::vector<T> a;  // size num_vars
    Rel rel = Rel::Le;
    T b{};
  };
  std::vector<Row> rows;

  int add_var(T cost = T(0)) {
    objective.push_back(std::move(cost));
    for (auto& r : rows) r.a.push_back(T(0));
    return num_vars++;
  }
  void add_row(std::vector<T> a, Rel rel, T b) {
    a.resize(static_cast<std::size_t>(num_vars), T(0));
    rows.push_back(Row{std::move(a), rel, std::move(b)});
  }
};

template <class T>
struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  T objective{};
  std::vector<T> x;
  long iterations = 0;
};

namespace lp_detail {

template <class T>
struct Tol {
  static bool is_zero(const T& v) { return v == T(0); }
  static bool is_neg(const T& v) { return v < T(0); }
  static bool is_pos(const T& v) { return v > T(0); }
};

template <>
struct Tol<double> {
  static constexpr double eps = 1e-9;
  static bool is_zero(double v) { return v > -eps && v < eps; }
  static bool is_neg(double v) { return v <= -eps; }
  static bool is_pos(double v) { return v >= eps; }
};

}  // namespace lp_detail

/// Dense two-phase simplex, Bland's rule in both phases (deterministic and
/// cycling-safe; with exact scalar types the solve is exact).
template <class T>
LpResult<T> solve_lp(const LinearProgram<T>& lp, long max_iters = 200000) {
  using Tol = lp_detail::Tol<T>;
  const int n = lp.num_vars;
  const int m = static_cast<int>(lp.rows.size());

  // Column layout: [structural | slack/surplus | artificial].
  int n_slack = 0;
  for (const auto& r : lp.rows)
    if (r.rel != Rel::Eq) ++n_slack;

  // After orienting b >= 0, a row needs an artificial unless its slack can
  // serve as the initial basic variable (Le rows with b >= 0).
  std::vector<int> slack_col(m, -1), art_col(m, -1);
  struct SRow {
    std::vector<T> a;
    T b;
    Rel rel;
  };
  std::vector<SRow> rows;
  rows.reserve(m);
  for (const auto& r : lp.rows) {
    SRow s{r.a, r.b, r.rel};
    if (Tol::is_neg(s.b)) {
      for (auto& v : s.a) v = -v;
      s.b = -s.b;
      s.rel = s.rel == Rel::Le ? Rel::Ge : (s.rel == Rel::Ge ? Rel::Le : Rel::Eq);
    }
    rows.push_back(std::move(s));
  }
  int n_art = 0;
  {
    int sc = n;
    for (int i = 0; i < m; ++i) {
      if (rows[i].rel != Rel::Eq) slack_col[i] = sc++;
      if (rows[i].rel != Rel::Le) ++n_art;
    }
  }
  const int total_nosl = n + n_slack;
  int total = total_nosl + n_art;
  {
    int ac = total_nosl;
    for (int i = 0; i < m; ++i)
      if (rows[i].rel != Rel::Le) art_col[i] = ac++;
  }

  // Tableau: m rows x (total + 1), last column = rhs.
  std::vector<std::vector<T>> tab(m, std::vector<T>(total + 1, T(0)));
  std::vector<int> basis(m, -1);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) tab[i][j] = rows[i].a[j];
    if (slack_col[i] >= 0) tab[i][slack_col[i]] = rows[i].rel == Rel::Le ? T(1) : T(-1);
    tab[i][total] = rows[i].b;
    if (art_col[i] >= 0) {
      tab[i][art_col[i]] = T(1);
      basis[i] = art_col[i];
    } else {
      basis[i] = slack_col[i];
    }
  }

  long iters = 0;

  auto run_phase = [&](const std::vector<T>& cost) -> LpStatus {
    while (true) {
      if (max_iters >= 0 && iters >= max_iters) return LpStatus::IterationLimit;
      // Bland: entering = lowest-index column with positive reduced cost.
      int enter = -1;
      for (int j = 0; j < total; ++j) {
        if (j >= total_nosl) continue;  // artificials never re-enter
        bool basic = false;
        for (int i = 0; i < m; ++i)
          if (basis[i] == j) {
            basic = true;
            break;
          }
        if (basic) continue;
        T red = j < static_cast<int>(cost.size()) ? cost[j] : T(0);
        for (int i = 0; i < m; ++i) {
          int bj = basis[i];
          T cb = bj < static_cast<int>(cost.size()) ? cost[bj] : T(0);
          if (!Tol::is_zero(cb) && !Tol::is_zero(tab[i][j])) red -= cb * tab[i][j];
        }
        if (Tol::is_pos(red)) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return LpStatus::Optimal;
      // Ratio test; Bland ties by smallest basis index.
      int leave = -1;
      for (int i = 0; i < m; ++i) {
        if (!Tol::is_pos(tab[i][enter])) continue;
        if (leave < 0) {
          leave = i;
          continue;
        }
        T lhs = tab[i][total] * tab[leave][enter];
        T rhs = tab[leave][total] * tab[i][enter];
        if (lhs < rhs || (lhs == rhs && basis[i] < basis[leave])) leave = i;
      }
      if (leave < 0) return LpStatus::Unbounded;
      // Pivot.
      ++iters;
      T piv = tab[leave][enter];
      for (auto& v : tab[leave]) v /= piv;
      tab[leave][enter] = T(1);
      for (int i = 0; i < m; ++i) {
        if (i == leave) continue;
        T f = tab[i][enter];
        if (Tol::is_zero(f)) continue;
        for (int j = 0; j <= total; ++j) tab[i][j] -= f * tab[leave][j];
        tab[i][enter] = T(0);
      }
      basis[leave] = enter;
    }
  };

  LpResult<T> result;
  if (n_art > 0) {
    // Phase 1: maximize -(sum of artificials).
    std::vector<T> cost1(total, T(0));
    for (int j = total_nosl; j < total; ++j) cost1[j] = T(-1);
    LpStatus st = run_phase(cost1);
    result.iterations = iters;
    if (st == LpStatus::IterationLimit) {
      result.status = st;
      return result;
    }
    T art_sum = T(0);
    for (int i = 0; i < m; ++i)
      if (basis[i] >= total_nosl) art_sum += tab[i][total];
    if (!Tol::is_zero(art_sum)) {
      result.status = LpStatus::Infeasible;
      return result;
    }
    // Drive remaining degenerate artificials out of the basis when possible.
    for (int i = 0; i < m; ++i) {
      if (basis[i] < total_nosl) continue;
      int repl = -1;
      for (int j = 0; j < total_nosl; ++j) {
        if (!Tol::is_zero(tab[i][j])) {
          repl = j;
          break;
        }
      }
      if (repl < 0) continue;  // redundant row
      T piv = tab[i][repl];
      for (auto& v : tab[i]) v /= piv;
      tab[i][repl] = T(1);
      for (int r = 0; r < m; ++r) {
        if (r == i) continue;
        T f = tab[r][repl];
        if (Tol::is_zero(f)) continue;
        for (int j = 0; j <= total; ++j) tab[r][j] -= f * tab[i][j];
        tab[r][repl] = T(0);
      }
      basis[i] = repl;
    }
  }

  std::vector<T> cost2(total, T(0));
  for (int j = 0; j < n; ++j) cost2[j] = lp.objective[j];
  LpStatus st = run_phase(cost2);
  result.iterations = iters;
  result.status = st;
  if (st != LpStatus::Optimal) return result;

  result.x.assign(n, T(0));
  for (int i = 0; i < m; ++i) {
    if (basis[i] >= 0 && basis[i] < n) result.x[basis[i]] = tab[i][total];
  }
  result.objective = T(0);
  for (int j = 0; j < n; ++j) result.objective += lp.objective[j] * result.x[j];
  return result;
}

}  // namespace greedylb
