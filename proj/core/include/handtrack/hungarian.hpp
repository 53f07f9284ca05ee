#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace handtrack {

/// Dense row-major cost matrix.
class CostMatrix {
 public:
  CostMatrix() = default;
  CostMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const double> row(std::size_t r) const {
    return std::span<const double>(data_).subspan(r * cols_, cols_);
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

using Assignment = std::vector<std::pair<std::size_t, std::size_t>>;

/// Minimum-cost matching covering min(rows, cols) pairs, sorted by row.
/// Costs must be finite and non-negative. Empty matrices yield an empty
/// assignment.
Assignment hungarian(const CostMatrix& cost);

double assignment_cost(const CostMatrix& cost, const Assignment& assignment);

}  // namespace handtrack
