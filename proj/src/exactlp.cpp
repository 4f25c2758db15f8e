#include "ctx/exactlp.hpp"

#include <algorithm>
#include <cstddef>

namespace ctx {

namespace {

constexpr std::size_t kPivotCeiling = 2'000'000;

std::map<std::string, std::size_t> index_variables(const LinearSystem& system) {
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < system.variables.size(); ++i)
    if (!index.emplace(system.variables[i], i).second)
      fail(ErrorCode::MalformedSystem, "duplicate variable '" + system.variables[i] + "'");
  for (const auto& eq : system.equalities)
    for (const auto& [var, _] : eq.coeffs)
      if (!index.count(var))
        fail(ErrorCode::MalformedSystem, "undeclared variable '" + var + "'");
  for (const auto& var : system.nonneg)
    if (!index.count(var))
      fail(ErrorCode::MalformedSystem, "undeclared nonneg variable '" + var + "'");
  return index;
}

struct DenseSystem {
  std::size_t nvars = 0;
  std::vector<std::vector<Rational>> rows;  // each of size nvars
  std::vector<Rational> rhs;
  std::vector<bool> nonneg;
};

DenseSystem densify(const LinearSystem& system,
                    const std::map<std::string, std::size_t>& index) {
  DenseSystem d;
  d.nvars = system.variables.size();
  d.nonneg.assign(d.nvars, false);
  for (const auto& var : system.nonneg) d.nonneg[index.at(var)] = true;
  for (const auto& eq : system.equalities) {
    std::vector<Rational> row(d.nvars, Rational(0));
    for (const auto& [var, c] : eq.coeffs) row[index.at(var)] += c;
    d.rows.push_back(std::move(row));
    d.rhs.push_back(eq.rhs);
  }
  return d;
}

// Eliminates variables that are forced by sign constraints: in an equality
// whose live coefficients all have the same sign over nonneg variables and
// whose rhs is 0, every participating variable must be 0. Shrinks the big
// enumeration-backed systems dramatically before the simplex runs.
// Returns false if a contradiction (empty row with nonzero rhs, or a forced
// negative value) is found.
bool presolve(DenseSystem& d, std::vector<std::optional<Rational>>& fixed) {
  fixed.assign(d.nvars, std::nullopt);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t r = 0; r < d.rows.size(); ++r) {
      Rational rhs = d.rhs[r];
      std::vector<std::size_t> live;
      bool all_pos = true, all_neg = true, all_nonneg_vars = true;
      for (std::size_t j = 0; j < d.nvars; ++j) {
        const Rational& c = d.rows[r][j];
        if (c == 0) continue;
        if (fixed[j]) { rhs -= c * *fixed[j]; d.rows[r][j] = 0; changed = true; continue; }
        live.push_back(j);
        if (c < 0) all_pos = false;
        if (c > 0) all_neg = false;
        if (!d.nonneg[j]) all_nonneg_vars = false;
      }
      d.rhs[r] = rhs;
      if (live.empty()) {
        if (rhs != 0) return false;
        continue;
      }
      if (live.size() == 1) {
        std::size_t j = live[0];
        Rational v = rhs / d.rows[r][j];
        if (d.nonneg[j] && v < 0) return false;
        fixed[j] = v;
        d.rows[r][j] = 0;
        d.rhs[r] = 0;  // the row is now satisfied exactly
        changed = true;
        continue;
      }
      if (rhs == 0 && all_nonneg_vars && (all_pos || all_neg)) {
        for (std::size_t j : live) { fixed[j] = Rational(0); d.rows[r][j] = 0; }
        changed = true;
      }
    }
  }
  return true;
}

}  // namespace

std::optional<SolutionPoint> solve_feasibility(const LinearSystem& system) {
  auto index = index_variables(system);
  DenseSystem d = densify(system, index);

  std::vector<std::optional<Rational>> fixed;
  if (!presolve(d, fixed)) return std::nullopt;

  // compact the live variables and rows
  std::vector<std::size_t> live_vars;
  for (std::size_t j = 0; j < d.nvars; ++j)
    if (!fixed[j]) live_vars.push_back(j);
  std::vector<std::size_t> live_rows;
  for (std::size_t r = 0; r < d.rows.size(); ++r) {
    bool nonzero = d.rhs[r] != 0;
    for (std::size_t j : live_vars)
      if (d.rows[r][j] != 0) { nonzero = true; break; }
    if (nonzero) live_rows.push_back(r);
  }

  const std::size_t m = live_rows.size();
  // free variables are split as x = xp - xm
  std::vector<std::pair<std::size_t, bool>> columns;  // (original var, negated half)
  for (std::size_t j : live_vars) {
    columns.emplace_back(j, false);
    if (!d.nonneg[j]) columns.emplace_back(j, true);
  }
  const std::size_t n = columns.size();
  const std::size_t total = n + m;  // + artificials

  // tableau rows: [structural columns | artificial columns | rhs]
  std::vector<std::vector<Rational>> t(m, std::vector<Rational>(total + 1, Rational(0)));
  for (std::size_t i = 0; i < m; ++i) {
    std::size_t r = live_rows[i];
    bool flip = d.rhs[r] < 0;
    for (std::size_t k = 0; k < n; ++k) {
      Rational c = d.rows[r][columns[k].first];
      if (columns[k].second) c = -c;
      t[i][k] = flip ? -c : c;
    }
    t[i][n + i] = 1;
    t[i][total] = flip ? -d.rhs[r] : d.rhs[r];
  }

  // phase-I objective: minimize the sum of artificials
  std::vector<Rational> cost(total + 1, Rational(0));
  for (std::size_t k = n; k < total; ++k) cost[k] = 1;
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    basis[i] = n + i;
    for (std::size_t k = 0; k <= total; ++k) cost[k] -= t[i][k];
  }

  std::size_t pivots = 0;
  while (true) {
    // Bland: entering column is the lowest-index negative reduced cost
    std::size_t entering = total;
    for (std::size_t k = 0; k < total; ++k)
      if (cost[k] < 0) { entering = k; break; }
    if (entering == total) break;

    std::size_t leaving = m;
    Rational best_ratio;
    for (std::size_t i = 0; i < m; ++i) {
      if (t[i][entering] <= 0) continue;
      Rational ratio = t[i][total] / t[i][entering];
      if (leaving == m || ratio < best_ratio ||
          (ratio == best_ratio && basis[i] < basis[leaving])) {
        leaving = i;
        best_ratio = ratio;
      }
    }
    if (leaving == m)
      fail(ErrorCode::InternalError, "phase-I objective unbounded");

    if (++pivots > kPivotCeiling)
      fail(ErrorCode::InternalError, "pivot ceiling hit");

    Rational p = t[leaving][entering];
    for (std::size_t k = 0; k <= total; ++k) t[leaving][k] /= p;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leaving || t[i][entering] == 0) continue;
      Rational f = t[i][entering];
      for (std::size_t k = 0; k <= total; ++k) t[i][k] -= f * t[leaving][k];
    }
    if (cost[entering] != 0) {
      Rational f = cost[entering];
      for (std::size_t k = 0; k <= total; ++k) cost[k] -= f * t[leaving][k];
    }
    basis[leaving] = entering;
  }

  if (-cost[total] != 0) return std::nullopt;  // artificials cannot all vanish

  std::vector<Rational> values(d.nvars, Rational(0));
  for (std::size_t j = 0; j < d.nvars; ++j)
    if (fixed[j]) values[j] = *fixed[j];
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] >= n) continue;  // redundant row, artificial basic at 0
    auto [var, negated] = columns[basis[i]];
    values[var] += negated ? -t[i][total] : t[i][total];
  }

  SolutionPoint point;
  for (std::size_t j = 0; j < d.nvars; ++j) point[system.variables[j]] = values[j];
  return point;
}

std::optional<SolutionPoint> solve_linear_system(const LinearSystem& system) {
  auto index = index_variables(system);
  DenseSystem d = densify(system, index);
  const std::size_t n = d.nvars;
  const std::size_t m = d.rows.size();

  std::vector<std::size_t> pivot_col;  // per eliminated row
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < m; ++col) {
    std::size_t pr = m;
    for (std::size_t i = row; i < m; ++i)
      if (d.rows[i][col] != 0) { pr = i; break; }
    if (pr == m) continue;
    std::swap(d.rows[row], d.rows[pr]);
    std::swap(d.rhs[row], d.rhs[pr]);
    Rational p = d.rows[row][col];
    for (std::size_t k = col; k < n; ++k) d.rows[row][k] /= p;
    d.rhs[row] /= p;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == row || d.rows[i][col] == 0) continue;
      Rational f = d.rows[i][col];
      for (std::size_t k = col; k < n; ++k) d.rows[i][k] -= f * d.rows[row][k];
      d.rhs[i] -= f * d.rhs[row];
    }
    pivot_col.push_back(col);
    ++row;
  }
  for (std::size_t i = row; i < m; ++i)
    if (d.rhs[i] != 0) return std::nullopt;

  // rows are in reduced echelon form: pivot rows touch only free columns,
  // and free variables are set to 0
  std::vector<Rational> values(n, Rational(0));
  for (std::size_t i = 0; i < row; ++i) values[pivot_col[i]] = d.rhs[i];

  SolutionPoint point;
  for (std::size_t j = 0; j < n; ++j) point[system.variables[j]] = values[j];
  return point;
}

}  // namespace ctx
