#include "gmatch/lsap.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "gmatch/error.hpp"

namespace gmatch {

CostMatrix::CostMatrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

CostMatrix CostMatrix::from_rows(const std::vector<std::vector<double>> &rows) {
  std::size_t cols = rows.empty() ? 0 : rows.front().size();
  CostMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw InvalidArgument("ragged cost matrix");
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  }
  return m;
}

Assignment solve_lsap(const CostMatrix &cost) {
  if (!cost.square()) {
    throw InvalidArgument("LSAP needs a square matrix, got " +
                          std::to_string(cost.rows()) + "x" +
                          std::to_string(cost.cols()));
  }
  const std::size_t n = cost.rows();
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      double v = cost(r, c);
      if (!std::isfinite(v) || v < 0) {
        throw InvalidArgument("cost matrix entries must be finite and >= 0");
      }
    }
  }

  constexpr double kInf = std::numeric_limits<double>::infinity();
  // 1-based potentials; column 0 is the virtual source.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
  std::vector<std::size_t> match(n + 1, 0), way(n + 1, 0);
  std::vector<char> used(n + 1);

  for (std::size_t row = 1; row <= n; ++row) {
    match[0] = row;
    std::size_t col0 = 0;
    std::fill(minv.begin(), minv.end(), kInf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[col0] = 1;
      std::size_t r0 = match[col0], col1 = 0;
      double delta = kInf;
      for (std::size_t c = 1; c <= n; ++c) {
        if (used[c]) continue;
        double cur = cost(r0 - 1, c - 1) - u[r0] - v[c];
        if (cur < minv[c]) {
          minv[c] = cur;
          way[c] = col0;
        }
        if (minv[c] < delta) {
          delta = minv[c];
          col1 = c;
        }
      }
      for (std::size_t c = 0; c <= n; ++c) {
        if (used[c]) {
          u[match[c]] += delta;
          v[c] -= delta;
        } else {
          minv[c] -= delta;
        }
      }
      col0 = col1;
    } while (match[col0] != 0);
    do {
      std::size_t col1 = way[col0];
      match[col0] = match[col1];
      col0 = col1;
    } while (col0 != 0);
  }

  Assignment a;
  a.mapping.assign(n, 0);
  for (std::size_t c = 1; c <= n; ++c) a.mapping[match[c] - 1] = c - 1;
  // Summed directly rather than read from the dual, so the total is exactly
  // the cost of the returned mapping.
  for (std::size_t r = 0; r < n; ++r) a.total_cost += cost(r, a.mapping[r]);
  return a;
}

}  // namespace gmatch
