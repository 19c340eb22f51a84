#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace iplab::numerics {

using Shape = std::vector<std::size_t>;

std::size_t shape_size(const Shape& shape);
std::string shape_string(const Shape& shape);

/// Dense row-major array of doubles.
///
/// Construction from external data validates that the shape matches the
/// payload length and that every value is finite. Mutable access is exposed
/// for builders; readers share tensors by const reference.
class Tensor {
 public:
  Tensor() = default;

  /// Zero-filled tensor of the given shape.
  explicit Tensor(Shape shape);

  /// Throws DimensionError if product(shape) != data.size() and
  /// NumericIntegrityError if any value is NaN or infinite.
  Tensor(Shape shape, std::vector<double> data);

  static Tensor filled(Shape shape, double value);
  static Tensor vector(std::initializer_list<double> values);
  static Tensor matrix(std::initializer_list<std::initializer_list<double>> rows);

  const Shape& shape() const noexcept { return shape_; }
  std::size_t rank() const noexcept { return shape_.size(); }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }
  std::size_t dim(std::size_t axis) const;

  /// Extents of a rank-2 tensor.
  std::size_t rows() const;
  std::size_t cols() const;

  std::span<const double> values() const noexcept { return data_; }
  std::span<double> values() noexcept { return data_; }
  const double* data() const noexcept { return data_.data(); }
  double* data() noexcept { return data_.data(); }

  double operator[](std::size_t i) const noexcept { return data_[i]; }
  double& operator[](std::size_t i) noexcept { return data_[i]; }

  double at(std::size_t r, std::size_t c) const noexcept { return data_[r * shape_[1] + c]; }
  double& at(std::size_t r, std::size_t c) noexcept { return data_[r * shape_[1] + c]; }

  /// View of row r of a rank-2 tensor.
  std::span<const double> row(std::size_t r) const;
  std::span<double> row(std::size_t r);

  /// Same payload, new shape with equal element count.
  Tensor reshaped(Shape shape) const&;
  Tensor reshaped(Shape shape) &&;

  bool all_finite() const noexcept;

  friend bool operator==(const Tensor& a, const Tensor& b) = default;

 private:
  Shape shape_;
  std::vector<double> data_;
};

/// Split-plane complex tensor: real and imaginary parts share one shape.
struct ComplexTensor {
  Tensor re;
  Tensor im;

  ComplexTensor() = default;
  /// Throws DimensionError if the planes differ in shape.
  ComplexTensor(Tensor real, Tensor imag);
  /// Real tensor lifted with a zero imaginary plane.
  static ComplexTensor from_real(Tensor real);

  const Shape& shape() const noexcept { return re.shape(); }
  std::size_t size() const noexcept { return re.size(); }
};

}  // namespace iplab::numerics
