#pragma once

#include <cstddef>
#include <vector>

namespace gmatch {

/// Dense row-major cost matrix with finite, nonnegative entries.
class CostMatrix {
 public:
  CostMatrix() = default;
  CostMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);
  static CostMatrix from_rows(const std::vector<std::vector<double>> &rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  double operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }
  double &operator()(std::size_t r, std::size_t c) {
    return data_[r * cols_ + c];
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

struct Assignment {
  /// mapping[row] = assigned column.
  std::vector<std::size_t> mapping;
  double total_cost = 0.0;
};

/// Optimal linear sum assignment of a square matrix (Hungarian method with
/// shortest augmenting paths, O(n^3)). Throws InvalidArgument when the
/// matrix is not square or has negative or non-finite entries.
Assignment solve_lsap(const CostMatrix &cost);

}  // namespace gmatch
