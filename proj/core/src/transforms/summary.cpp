#include "iplab/transforms/summary.hpp"

#include <algorithm>
#include <cmath>

#include "iplab/error.hpp"

namespace iplab::transforms {

numerics::Tensor summary_stats(const numerics::Tensor& x) {
  if (x.empty()) throw EmptyInputError("summary_stats of an empty vector");
  const auto values = x.values();
  const auto n = static_cast<double>(values.size());

  double sum = 0.0;
  double lo = values.front(), hi = values.front();
  bool all_positive = true;
  for (double v : values) {
    sum += v;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    all_positive = all_positive && v > 0.0;
  }
  const double mean = sum / n;

  double sq = 0.0;
  for (double v : values) sq += (v - mean) * (v - mean);
  const double variance = sq / n;

  double log_sum = 0.0, inv_sum = 0.0;
  for (double v : values) {
    const double p = all_positive ? v : std::abs(v) + kSummaryPositiveFloor;
    log_sum += std::log(p);
    inv_sum += 1.0 / p;
  }

  numerics::Tensor out({kSummaryFeatureCount});
  out[0] = mean;
  out[1] = std::sqrt(variance);
  out[2] = variance;
  out[3] = hi;
  out[4] = lo;
  out[5] = std::exp(log_sum / n);
  out[6] = n / inv_sum;
  return out;
}

}  // namespace iplab::transforms
