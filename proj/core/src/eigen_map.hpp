#pragma once

#include <Eigen/Dense>

#include "iplab/numerics/tensor.hpp"

namespace iplab::detail {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using MatMap = Eigen::Map<RowMatrix>;
using ConstMatMap = Eigen::Map<const RowMatrix>;

inline MatMap as_matrix(numerics::Tensor& t, std::size_t rows, std::size_t cols) {
  return MatMap(t.data(), static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
}

inline ConstMatMap as_matrix(const numerics::Tensor& t, std::size_t rows, std::size_t cols) {
  return ConstMatMap(t.data(), static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
}

inline MatMap as_matrix(numerics::Tensor& t) { return as_matrix(t, t.rows(), t.cols()); }
inline ConstMatMap as_matrix(const numerics::Tensor& t) { return as_matrix(t, t.rows(), t.cols()); }

}  // namespace iplab::detail
