// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "udet/errors.hpp"

namespace udet {

// Dense row-major tensor of doubles. Value-semantic; copies are deep.
class Tensor {
 public:
  Tensor() = default;

  explicit Tensor(std::vector<int> shape) : shape_(std::move(shape)) {
    size_t n = 1;
    for (int d : shape_) {
      if (d <= 0) throw ConfigError("tensor dimensions must be positive");
      n *= static_cast<size_t>(d);
    }
    data_.assign(n, 0.0);
  }

  static Tensor zeros(std::vector<int> shape) { return Tensor(std::move(shape)); }

  const std::vector<int>& shape() const { return shape_; }
  int dim(int i) const { return shape_[static_cast<size_t>(i)]; }
  size_t size() const { return data_.size(); }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }

  double& operator[](size_t i) { return data_[i]; }
  double operator[](size_t i) const { return data_[i]; }

  // 3-d accessors for (rows, cols, channels) layouts.
  double& at(int r, int c, int ch) {
    return data_[(static_cast<size_t>(r) * shape_[1] + c) * shape_[2] + ch];
  }
  double at(int r, int c, int ch) const {
    return data_[(static_cast<size_t>(r) * shape_[1] + c) * shape_[2] + ch];
  }

  // Reinterprets the buffer with a new shape of equal element count.
  Tensor reshaped(std::vector<int> shape) const {
    Tensor out;
    size_t n = 1;
    for (int d : shape) {
      if (d <= 0) throw ConfigError("tensor dimensions must be positive");
      n *= static_cast<size_t>(d);
    }
    if (n != data_.size())
      throw ConfigError("reshape: element count mismatch (" +
                        std::to_string(n) + " vs " + std::to_string(data_.size()) + ")");
    out.shape_ = std::move(shape);
    out.data_ = data_;
    return out;
  }

  void fill(double v) { data_.assign(data_.size(), v); }

  bool all_finite() const {
    for (double v : data_)
      if (!std::isfinite(v)) return false;
    return true;
  }

 private:
  std::vector<int> shape_;
  std::vector<double> data_;
};

}  // namespace udet
