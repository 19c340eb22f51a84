#pragma once

#include "iplab/numerics/rng.hpp"
#include "iplab/numerics/tensor.hpp"

namespace iplab::numerics {

/// Matrix product of a [m x k] and b [k x n].
Tensor matmul(const Tensor& a, const Tensor& b);

/// a [m x k] times the transpose of b [n x k].
Tensor matmul_transposed(const Tensor& a, const Tensor& b);

Tensor transpose(const Tensor& a);

/// sqrt of the sum of squares of all elements.
double l2_norm(const Tensor& t);

/// I.i.d. N(0, stddev^2) tensor drawn from `rng`. stddev must be > 0.
Tensor normal_init(SeededRng& rng, const Shape& shape, double stddev);

Tensor identity(std::size_t n);

/// Elementwise helpers; shapes must match exactly.
Tensor add(const Tensor& a, const Tensor& b);
Tensor subtract(const Tensor& a, const Tensor& b);
Tensor scale(const Tensor& a, double c);

/// Largest |a_i - b_i|; shapes must match.
double max_abs_diff(const Tensor& a, const Tensor& b);

}  // namespace iplab::numerics
