#include "iplab/data/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "iplab/error.hpp"
#include "iplab/numerics/rng.hpp"
#include "iplab/transforms/fft.hpp"
#include "iplab/transforms/summary.hpp"

namespace iplab::data {

std::string_view to_string(Variant v) noexcept {
  switch (v) {
    case Variant::raw: return "raw";
    case Variant::fourier: return "fourier";
    case Variant::wavelet: return "wavelet";
    case Variant::summary: return "summary";
  }
  return "raw";
}

Variant variant_from_string(std::string_view name) {
  for (auto v : {Variant::raw, Variant::fourier, Variant::wavelet, Variant::summary}) {
    if (to_string(v) == name) return v;
  }
  throw ParameterError("unknown variant '" + std::string(name) + "'");
}

void LabeledDataset::check() const {
  if (samples.rank() != 2) throw DimensionError("samples must be [N x d]");
  if (samples.rows() != labels.size()) {
    throw DimensionError(std::to_string(samples.rows()) + " rows but " + std::to_string(labels.size()) + " labels");
  }
  if (!groups.empty() && groups.size() != labels.size()) {
    throw DimensionError(std::to_string(groups.size()) + " group ids for " + std::to_string(labels.size()) + " rows");
  }
}

LabeledDataset select_rows(const LabeledDataset& ds, const std::vector<std::size_t>& idx) {
  const std::size_t w = ds.width();
  std::vector<double> values;
  values.reserve(idx.size() * w);
  LabeledDataset out;
  out.variant = ds.variant;
  out.meta = ds.meta;
  for (auto i : idx) {
    if (i >= ds.size()) throw DimensionError("row index " + std::to_string(i) + " out of range");
    const auto row = ds.samples.row(i);
    values.insert(values.end(), row.begin(), row.end());
    out.labels.push_back(ds.labels[i]);
    if (!ds.groups.empty()) out.groups.push_back(ds.groups[i]);
  }
  out.samples = Tensor({idx.size(), w}, std::move(values));
  return out;
}

LabeledDataset make_variant(const LabeledDataset& ds, Variant variant, const transforms::WaveletSpec& wavelet) {
  if (ds.variant != Variant::raw) {
    throw StateError("dataset is already a " + std::string(to_string(ds.variant)) + " variant");
  }
  ds.check();
  LabeledDataset out;
  out.labels = ds.labels;
  out.groups = ds.groups;
  out.variant = variant;
  out.meta = ds.meta.empty() ? std::string(to_string(variant)) : ds.meta + "; " + std::string(to_string(variant));
  const std::size_t n = ds.size();
  const std::size_t d = ds.width();

  auto row_vector = [&](std::size_t r) {
    const auto row = ds.samples.row(r);
    return Tensor({d}, std::vector<double>(row.begin(), row.end()));
  };

  switch (variant) {
    case Variant::raw:
      out.samples = ds.samples;
      break;
    case Variant::fourier: {
      out.samples = Tensor({n, 2 * d});
      for (std::size_t r = 0; r < n; ++r) {
        const auto spec = transforms::dft(numerics::ComplexTensor::from_real(row_vector(r)),
                                          transforms::Direction::forward);
        auto dst = out.samples.row(r);
        std::copy(spec.re.values().begin(), spec.re.values().end(), dst.begin());
        std::copy(spec.im.values().begin(), spec.im.values().end(), dst.begin() + static_cast<std::ptrdiff_t>(d));
      }
      break;
    }
    case Variant::wavelet: {
      out.samples = Tensor({n, d});
      for (std::size_t r = 0; r < n; ++r) {
        const auto y = transforms::morlet_cwt(row_vector(r), wavelet);
        std::copy(y.values().begin(), y.values().end(), out.samples.row(r).begin());
      }
      break;
    }
    case Variant::summary: {
      out.samples = Tensor({n, transforms::kSummaryFeatureCount});
      for (std::size_t r = 0; r < n; ++r) {
        const auto y = transforms::summary_stats(row_vector(r));
        std::copy(y.values().begin(), y.values().end(), out.samples.row(r).begin());
      }
      break;
    }
  }
  return out;
}

Split split_train_test(const LabeledDataset& ds, double test_fraction, std::uint64_t seed, bool group_by_app) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) throw ParameterError("test fraction must be in (0, 1)");
  ds.check();
  const std::size_t n = ds.size();

  // Units that move together: app groups, or single rows.
  std::vector<std::vector<std::size_t>> units;
  if (group_by_app && !ds.groups.empty()) {
    std::map<int, std::size_t> slot;
    for (std::size_t i = 0; i < n; ++i) {
      auto [it, fresh] = slot.try_emplace(ds.groups[i], units.size());
      if (fresh) units.emplace_back();
      units[it->second].push_back(i);
    }
  } else {
    units.resize(n);
    for (std::size_t i = 0; i < n; ++i) units[i] = {i};
  }

  std::vector<std::size_t> order(units.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  numerics::SeededRng rng(seed);
  rng.shuffle(order.begin(), order.end());

  const auto n_test = static_cast<std::size_t>(std::lround(test_fraction * static_cast<double>(units.size())));
  std::vector<std::size_t> test_idx;
  std::vector<std::size_t> train_idx;
  for (std::size_t k = 0; k < order.size(); ++k) {
    auto& dst = k < n_test ? test_idx : train_idx;
    dst.insert(dst.end(), units[order[k]].begin(), units[order[k]].end());
  }
  std::sort(test_idx.begin(), test_idx.end());
  std::sort(train_idx.begin(), train_idx.end());
  return {select_rows(ds, train_idx), select_rows(ds, test_idx)};
}

Standardizer Standardizer::fit(const Tensor& samples) {
  if (samples.rank() != 2 || samples.rows() == 0) throw EmptyInputError("standardizer needs a nonempty matrix");
  const std::size_t n = samples.rows();
  const std::size_t d = samples.cols();
  Standardizer s{std::vector<double>(d, 0.0), std::vector<double>(d, 0.0)};
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < d; ++c) s.mean[c] += samples.at(r, c);
  }
  for (auto& m : s.mean) m /= static_cast<double>(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < d; ++c) {
      const double dv = samples.at(r, c) - s.mean[c];
      s.scale[c] += dv * dv;
    }
  }
  for (auto& v : s.scale) {
    v = std::sqrt(v / static_cast<double>(n));
    if (!(v > 1e-12)) v = 1.0;
  }
  return s;
}

Tensor Standardizer::apply(const Tensor& samples) const {
  if (samples.rank() != 2 || samples.cols() != mean.size()) {
    throw DimensionError("standardizer fitted on width " + std::to_string(mean.size()) + ", got " +
                         numerics::shape_string(samples.shape()));
  }
  Tensor out(samples.shape());
  for (std::size_t r = 0; r < samples.rows(); ++r) {
    for (std::size_t c = 0; c < mean.size(); ++c) out.at(r, c) = (samples.at(r, c) - mean[c]) / scale[c];
  }
  return out;
}

}  // namespace iplab::data
