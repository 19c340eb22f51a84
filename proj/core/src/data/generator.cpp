#include "iplab/data/generator.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "iplab/error.hpp"
#include "iplab/numerics/rng.hpp"

namespace iplab::data {

namespace {

void validate_profile(const ClassProfile& p, const char* name) {
  const std::string who(name);
  if (!std::isfinite(p.log_scale)) throw ParameterError(who + " log scale must be finite");
  if (!(p.app_spread >= 0.0) || !(p.jitter >= 0.0) || !(p.spike_spread >= 0.0)) {
    throw ParameterError(who + " spreads must be >= 0");
  }
  if (!(p.spike_prob >= 0.0 && p.spike_prob <= 1.0)) throw ParameterError(who + " spike probability must be in [0, 1]");
  if (!(p.spike_scale >= 0.0)) throw ParameterError(who + " spike scale must be >= 0");
}

}  // namespace

void validate(const GeneratorConfig& cfg) {
  if (cfg.n_benign_apps < 0 || cfg.n_malware_apps < 0 || cfg.n_benign_apps + cfg.n_malware_apps < 1) {
    throw ParameterError("app counts must be >= 0 with at least one app");
  }
  if (cfg.trials_per_app < 1) throw ParameterError("trials_per_app must be >= 1");
  if (cfg.packets_per_trial < 1) throw ParameterError("packets_per_trial must be >= 1");
  validate_profile(cfg.benign, "benign");
  validate_profile(cfg.malware, "malware");
}

LabeledDataset generate_synthetic_traffic(const GeneratorConfig& cfg) {
  validate(cfg);
  const auto apps = static_cast<std::size_t>(cfg.n_benign_apps + cfg.n_malware_apps);
  const auto trials = static_cast<std::size_t>(cfg.trials_per_app);
  const auto packets = static_cast<std::size_t>(cfg.packets_per_trial);

  LabeledDataset ds;
  ds.samples = Tensor({apps * trials, packets});
  ds.labels.reserve(apps * trials);
  ds.groups.reserve(apps * trials);
  ds.meta = "synthetic seed=" + std::to_string(cfg.seed) + " apps=" + std::to_string(cfg.n_benign_apps) + "+" +
            std::to_string(cfg.n_malware_apps) + " trials=" + std::to_string(cfg.trials_per_app);

  numerics::SeededRng rng(cfg.seed);
  std::size_t row = 0;
  for (std::size_t app = 0; app < apps; ++app) {
    const bool malicious = app >= static_cast<std::size_t>(cfg.n_benign_apps);
    const ClassProfile& p = malicious ? cfg.malware : cfg.benign;
    const double app_mu = p.log_scale + p.app_spread * rng.normal();
    for (std::size_t t = 0; t < trials; ++t, ++row) {
      auto out = ds.samples.row(row);
      for (auto& v : out) {
        v = std::exp(app_mu + p.jitter * rng.normal());
        if (rng.uniform() < p.spike_prob) v += p.spike_scale * std::exp(p.spike_spread * rng.normal());
      }
      ds.labels.push_back(malicious ? 1 : 0);
      ds.groups.push_back(static_cast<int>(app));
    }
  }
  return ds;
}

CalibrationReport calibration_report(const LabeledDataset& ds) {
  ds.check();
  if (ds.size() == 0 || ds.width() == 0) throw EmptyInputError("calibration of an empty dataset");
  const auto values = ds.samples.values();
  std::vector<double> pooled(values.begin(), values.end());
  double sum = 0.0;
  for (double v : pooled) sum += v;

  const std::size_t mid = pooled.size() / 2;
  std::nth_element(pooled.begin(), pooled.begin() + static_cast<std::ptrdiff_t>(mid), pooled.end());
  double median = pooled[mid];
  if (pooled.size() % 2 == 0) {
    median = 0.5 * (median + *std::max_element(pooled.begin(), pooled.begin() + static_cast<std::ptrdiff_t>(mid)));
  }

  double var_sum = 0.0;
  const auto d = static_cast<double>(ds.width());
  for (std::size_t r = 0; r < ds.size(); ++r) {
    double m = 0.0;
    for (double v : ds.samples.row(r)) m += v;
    m /= d;
    double s = 0.0;
    for (double v : ds.samples.row(r)) s += (v - m) * (v - m);
    var_sum += s / d;
  }
  std::size_t malware = 0;
  for (int y : ds.labels) malware += y == 1 ? 1 : 0;
  const auto n = static_cast<double>(ds.size());
  return {sum / static_cast<double>(values.size()), median, var_sum / n, static_cast<double>(malware) / n};
}

}  // namespace iplab::data
