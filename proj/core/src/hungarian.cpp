#include "handtrack/hungarian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace handtrack {
namespace {

// Shortest augmenting path with row/column potentials, O(n^2 m) for an
// n x m matrix with n <= m. Ties resolve to the lowest column index.
std::vector<std::size_t> solve_rows_le_cols(const CostMatrix& cost, bool transposed) {
  const std::size_t n = transposed ? cost.cols() : cost.rows();
  const std::size_t m = transposed ? cost.rows() : cost.cols();
  auto at = [&](std::size_t i, std::size_t j) { return transposed ? cost(j, i) : cost(i, j); };

  constexpr double inf = std::numeric_limits<double>::infinity();
  // 1-based; index 0 is the virtual root column.
  std::vector<double> u(n + 1, 0.0);
  std::vector<double> v(m + 1, 0.0);
  std::vector<std::size_t> row_of_col(m + 1, 0);
  std::vector<std::size_t> way(m + 1, 0);

  for (std::size_t i = 1; i <= n; ++i) {
    row_of_col[0] = i;
    std::size_t j0 = 0;
    std::vector<double> minv(m + 1, inf);
    std::vector<bool> used(m + 1, false);
    do {
      used[j0] = true;
      const std::size_t i0 = row_of_col[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= m; ++j) {
        if (used[j]) continue;
        const double reduced = at(i0 - 1, j - 1) - u[i0] - v[j];
        if (reduced < minv[j]) {
          minv[j] = reduced;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= m; ++j) {
        if (used[j]) {
          u[row_of_col[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (row_of_col[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      row_of_col[j0] = row_of_col[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  std::vector<std::size_t> col_of_row(n, 0);
  for (std::size_t j = 1; j <= m; ++j) {
    if (row_of_col[j] != 0) {
      col_of_row[row_of_col[j] - 1] = j - 1;
    }
  }
  return col_of_row;
}

}  // namespace

Assignment hungarian(const CostMatrix& cost) {
  if (cost.empty()) {
    return {};
  }
  for (std::size_t r = 0; r < cost.rows(); ++r) {
    for (double c : cost.row(r)) {
      if (!std::isfinite(c) || c < 0.0) {
        throw std::invalid_argument("hungarian: costs must be finite and non-negative");
      }
    }
  }

  const bool transposed = cost.rows() > cost.cols();
  const auto matched = solve_rows_le_cols(cost, transposed);

  Assignment out;
  out.reserve(matched.size());
  for (std::size_t i = 0; i < matched.size(); ++i) {
    if (transposed) {
      out.emplace_back(matched[i], i);
    } else {
      out.emplace_back(i, matched[i]);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

double assignment_cost(const CostMatrix& cost, const Assignment& assignment) {
  double total = 0.0;
  for (const auto& [r, c] : assignment) {
    total += cost(r, c);
  }
  return total;
}

}  // namespace handtrack
