#include "mrlsp/assignment.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mrlsp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kForbiddenCost = 1e9;  // stand-in for +infinity entries

// O(n^3) shortest-augmenting-path assignment; requires n_rows <= n_cols and
// matches every row. Returns the total cost.
double solve_rows(const std::vector<std::vector<double>>& a, std::vector<int>* row_to_col) {
  const int n = static_cast<int>(a.size());
  const int m = n == 0 ? 0 : static_cast<int>(a[0].size());
  std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0);
  std::vector<int> p(m + 1, 0), way(m + 1, 0);

  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(m + 1, kInf);
    std::vector<uint8_t> used(m + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      double delta = kInf;
      int j1 = 0;
      for (int j = 1; j <= m; ++j) {
        if (used[j]) continue;
        const double cur = a[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= m; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0);
  }

  if (row_to_col) row_to_col->assign(n, -1);
  double total = 0.0;
  for (int j = 1; j <= m; ++j) {
    if (p[j] > 0) {
      if (row_to_col) (*row_to_col)[p[j] - 1] = j - 1;
      total += a[p[j] - 1][j - 1];
    }
  }
  return total;
}

// Minimum cost of a maximum matching (size min(rows, cols)); transposes when
// rows outnumber columns so every column is still covered.
double solve_any(const std::vector<std::vector<double>>& a) {
  const int n = static_cast<int>(a.size());
  const int m = n == 0 ? 0 : static_cast<int>(a[0].size());
  if (n == 0 || m == 0) return 0.0;
  if (n <= m) return solve_rows(a, nullptr);
  std::vector<std::vector<double>> t(m, std::vector<double>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) t[j][i] = a[i][j];
  return solve_rows(t, nullptr);
}

}  // namespace

std::vector<int> hungarian(const std::vector<std::vector<double>>& cost) {
  const int n_rows = static_cast<int>(cost.size());
  if (n_rows == 0) return {};
  const int n_cols = static_cast<int>(cost[0].size());
  for (const auto& row : cost)
    if (static_cast<int>(row.size()) != n_cols)
      throw std::invalid_argument("hungarian: ragged cost matrix");
  if (n_cols == 0) return std::vector<int>(n_rows, -1);

  std::vector<std::vector<double>> eff(n_rows, std::vector<double>(n_cols));
  for (int i = 0; i < n_rows; ++i)
    for (int j = 0; j < n_cols; ++j)
      eff[i][j] = std::isfinite(cost[i][j]) ? cost[i][j] : kForbiddenCost;

  const double total = solve_any(eff);
  if (total >= kForbiddenCost * 0.5)
    throw InfeasibleAssignmentError("hungarian: no finite-cost assignment");
  const double tol = 1e-9 * std::max(1.0, std::abs(total));

  // lexicographic refinement: fix each row in turn to its smallest column
  // (or to unassigned, when rows outnumber the remaining columns) that still
  // admits an optimal completion
  std::vector<int> result(n_rows, -1);
  std::vector<int> live_cols(n_cols);
  for (int j = 0; j < n_cols; ++j) live_cols[j] = j;
  double remaining_total = total;

  for (int r = 0; r < n_rows; ++r) {
    const int rows_left_after = n_rows - r - 1;
    auto sub_matrix = [&](int skip_col_pos) {
      std::vector<std::vector<double>> sub;
      sub.reserve(rows_left_after);
      for (int i = r + 1; i < n_rows; ++i) {
        std::vector<double> row;
        row.reserve(live_cols.size());
        for (size_t j = 0; j < live_cols.size(); ++j)
          if (static_cast<int>(j) != skip_col_pos) row.push_back(eff[i][live_cols[j]]);
        sub.push_back(std::move(row));
      }
      return sub;
    };

    bool fixed = false;
    for (size_t cj = 0; cj < live_cols.size() && !fixed; ++cj) {
      const double fix_cost = eff[r][live_cols[cj]];
      if (fix_cost >= kForbiddenCost) continue;
      const double sub_total = solve_any(sub_matrix(static_cast<int>(cj)));
      if (std::abs(fix_cost + sub_total - remaining_total) <= tol) {
        result[r] = live_cols[cj];
        remaining_total -= fix_cost;
        live_cols.erase(live_cols.begin() + cj);
        fixed = true;
      }
    }
    if (!fixed && rows_left_after >= static_cast<int>(live_cols.size())) {
      // this row may stay unassigned when the rows below still cover all cols
      const double sub_total = solve_any(sub_matrix(-1));
      if (std::abs(sub_total - remaining_total) <= tol) fixed = true;
    }
    if (!fixed)
      throw InfeasibleAssignmentError("hungarian: no feasible assignment for row " +
                                      std::to_string(r));
  }
  return result;
}

}  // namespace mrlsp
