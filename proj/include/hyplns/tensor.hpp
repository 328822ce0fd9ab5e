#pragma once

#include <cstdint>
#include <initializer_list>
#include <vector>

namespace hyplns {

// Dense row-major matrix of doubles. Rank is 1 or 2; vectors are [1 x n]
// rows. Small on purpose: the GNN and PPO losses only need matrix ops.
class Tensor {
 public:
  Tensor() = default;
  Tensor(std::int64_t rows, std::int64_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows * cols), fill) {}
  static Tensor row(std::initializer_list<double> values) {
    Tensor t(1, static_cast<std::int64_t>(values.size()));
    std::int64_t i = 0;
    for (double v : values) t.data_[i++] = v;
    return t;
  }
  static Tensor scalar(double v) {
    Tensor t(1, 1);
    t.data_[0] = v;
    return t;
  }

  std::int64_t rows() const { return rows_; }
  std::int64_t cols() const { return cols_; }
  std::int64_t size() const { return rows_ * cols_; }
  bool empty() const { return data_.empty(); }

  double& at(std::int64_t r, std::int64_t c) { return data_[r * cols_ + c]; }
  double at(std::int64_t r, std::int64_t c) const { return data_[r * cols_ + c]; }
  double& operator[](std::int64_t i) { return data_[i]; }
  double operator[](std::int64_t i) const { return data_[i]; }
  double item() const { return data_.at(0); }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }
  std::vector<double>& raw() { return data_; }
  const std::vector<double>& raw() const { return data_; }

  bool same_shape(const Tensor& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }

 private:
  std::int64_t rows_ = 0;
  std::int64_t cols_ = 0;
  std::vector<double> data_;
};

}  // namespace hyplns
