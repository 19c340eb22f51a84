#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "iplab/numerics/tensor.hpp"
#include "iplab/transforms/wavelet.hpp"

namespace iplab::data {

using numerics::Tensor;

enum class Variant { raw, fourier, wavelet, summary };

std::string_view to_string(Variant v) noexcept;
/// Throws ParameterError for unknown names.
Variant variant_from_string(std::string_view name);

/// Sample matrix with one label per row.
///
/// `groups` optionally tags each row with the id of the application (or any
/// other unit) it came from; it is either empty or one id per row.
struct LabeledDataset {
  Tensor samples;  // [N x d]
  std::vector<int> labels;
  Variant variant = Variant::raw;
  std::string meta;
  std::vector<int> groups;

  std::size_t size() const noexcept { return labels.size(); }
  std::size_t width() const { return samples.rank() == 2 ? samples.cols() : 0; }

  /// Throws DimensionError when rows, labels and groups disagree.
  void check() const;

  friend bool operator==(const LabeledDataset&, const LabeledDataset&) = default;
};

/// Rows `idx` of `ds`, in that order.
LabeledDataset select_rows(const LabeledDataset& ds, const std::vector<std::size_t>& idx);

/// Transformed copy of a raw dataset:
///   fourier  per-row DFT as re || im (width 2d)
///   wavelet  per-row single-scale Morlet CWT (width d)
///   summary  per-row summary statistics (width 7)
/// Throws StateError unless ds.variant is raw; Variant::raw returns a copy.
LabeledDataset make_variant(const LabeledDataset& ds, Variant variant, const transforms::WaveletSpec& wavelet = {});

struct Split {
  LabeledDataset train;
  LabeledDataset test;
};

/// Deterministic shuffle split. With `group_by_app`, whole groups go to one
/// side and round(test_fraction * groups) groups form the test set; rows with
/// no group ids count as singleton groups. Throws ParameterError unless
/// 0 < test_fraction < 1.
Split split_train_test(const LabeledDataset& ds, double test_fraction, std::uint64_t seed, bool group_by_app = true);

/// Per-column mean and population std of `fit`.
struct Standardizer {
  std::vector<double> mean;
  std::vector<double> scale;  // 1 for constant columns

  static Standardizer fit(const Tensor& samples);
  Tensor apply(const Tensor& samples) const;
};

}  // namespace iplab::data
