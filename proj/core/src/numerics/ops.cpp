#include "iplab/numerics/ops.hpp"

#include <algorithm>
#include <cmath>

#include <cmath>

#include "../eigen_map.hpp"
#include "iplab/error.hpp"

namespace iplab::numerics {

namespace {
void require_matrix(const Tensor& t, const char* name) {
  if (t.rank() != 2) throw DimensionError(std::string(name) + " must be a matrix, got " + shape_string(t.shape()));
}

void require_same_shape(const Tensor& a, const Tensor& b) {
  if (a.shape() != b.shape()) {
    throw DimensionError("shape mismatch: " + shape_string(a.shape()) + " vs " + shape_string(b.shape()));
  }
}
}  // namespace

Tensor matmul(const Tensor& a, const Tensor& b) {
  require_matrix(a, "lhs");
  require_matrix(b, "rhs");
  if (a.cols() != b.rows()) {
    throw DimensionError("matmul inner extents differ: " + shape_string(a.shape()) + " x " +
                         shape_string(b.shape()));
  }
  Tensor out({a.rows(), b.cols()});
  detail::as_matrix(out).noalias() = detail::as_matrix(a) * detail::as_matrix(b);
  return out;
}

Tensor matmul_transposed(const Tensor& a, const Tensor& b) {
  require_matrix(a, "lhs");
  require_matrix(b, "rhs");
  if (a.cols() != b.cols()) {
    throw DimensionError("matmul_transposed inner extents differ: " + shape_string(a.shape()) + " x " +
                         shape_string(b.shape()) + "^T");
  }
  Tensor out({a.rows(), b.rows()});
  detail::as_matrix(out).noalias() = detail::as_matrix(a) * detail::as_matrix(b).transpose();
  return out;
}

Tensor transpose(const Tensor& a) {
  require_matrix(a, "operand");
  Tensor out({a.cols(), a.rows()});
  detail::as_matrix(out) = detail::as_matrix(a).transpose();
  return out;
}

double l2_norm(const Tensor& t) {
  double peak = 0.0;
  for (double v : t.values()) peak = std::max(peak, std::abs(v));
  if (peak == 0.0) return 0.0;
  double sum = 0.0;
  for (double v : t.values()) sum += (v / peak) * (v / peak);
  return peak * std::sqrt(sum);
}

Tensor normal_init(SeededRng& rng, const Shape& shape, double stddev) {
  if (!(stddev > 0.0)) throw ParameterError("normal_init stddev must be > 0");
  Tensor t(shape);
  for (double& v : t.values()) v = rng.normal(0.0, stddev);
  return t;
}

Tensor identity(std::size_t n) {
  Tensor t({n, n});
  for (std::size_t i = 0; i < n; ++i) t.at(i, i) = 1.0;
  return t;
}

Tensor add(const Tensor& a, const Tensor& b) {
  require_same_shape(a, b);
  Tensor out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += b[i];
  return out;
}

Tensor subtract(const Tensor& a, const Tensor& b) {
  require_same_shape(a, b);
  Tensor out = a;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] -= b[i];
  return out;
}

Tensor scale(const Tensor& a, double c) {
  Tensor out = a;
  for (double& v : out.values()) v *= c;
  return out;
}

double max_abs_diff(const Tensor& a, const Tensor& b) {
  require_same_shape(a, b);
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace iplab::numerics
