#pragma once

#include <array>
#include <string_view>

#include "iplab/numerics/tensor.hpp"

namespace iplab::transforms {

enum class SummaryFeature {
  mean = 0,
  stddev,
  variance,
  maximum,
  minimum,
  geometric_mean,
  harmonic_mean,
};

inline constexpr std::size_t kSummaryFeatureCount = 7;
inline constexpr std::array<std::string_view, kSummaryFeatureCount> kSummaryFeatureNames = {
    "mean", "std", "variance", "max", "min", "geometric_mean", "harmonic_mean"};

/// Epsilon added to |x| for the geometric/harmonic means when any x <= 0.
inline constexpr double kSummaryPositiveFloor = 1e-12;

/// Seven features in fixed order: mean, population std, population variance,
/// max, min, geometric mean, harmonic mean. If any element is <= 0 the two
/// multiplicative means are computed on |x| + 1e-12 instead.
numerics::Tensor summary_stats(const numerics::Tensor& x);

}  // namespace iplab::transforms
