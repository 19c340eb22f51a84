#pragma once

#include <cstdint>

#include "iplab/data/dataset.hpp"

namespace iplab::data {

/// Class-conditional interarrival model (milliseconds).
///
/// Each application draws a latent log-scale mu_app = log_scale + app_spread * N(0,1).
/// Each packet gap is exp(mu_app + jitter * N(0,1)); with probability
/// spike_prob a retransmission-like delay spike_scale * exp(spike_spread * N(0,1))
/// is added.
struct ClassProfile {
  double log_scale;
  double app_spread = 0.3;
  double jitter = 0.8;
  double spike_prob;
  double spike_scale = 480.0;
  double spike_spread = 0.35;
};

struct GeneratorConfig {
  int n_benign_apps = 98;
  int n_malware_apps = 120;
  int trials_per_app = 5;
  int packets_per_trial = 100;
  std::uint64_t seed = 0;
  ClassProfile benign{2.0794415416798357, 0.3, 0.8, 0.02};  // ln 8
  ClassProfile malware{2.4849066497880004, 0.3, 0.8, 0.03};  // ln 12
};

/// Throws ParameterError on non-positive counts, negative spreads or
/// probabilities outside [0, 1].
void validate(const GeneratorConfig& cfg);

/// Raw dataset of (benign + malware apps) x trials rows, benign apps first.
/// Label 0 is benign, 1 malicious; groups hold the app index.
LabeledDataset generate_synthetic_traffic(const GeneratorConfig& cfg);

/// Pooled statistics compared against the reference capture.
struct CalibrationReport {
  double pooled_mean;
  double pooled_median;
  double mean_trial_variance;
  double malware_fraction;
};

inline constexpr double kReferenceMean = 27.43;
inline constexpr double kReferenceMedian = 10.07;
inline constexpr double kReferenceTrialVariance = 8329.96;

CalibrationReport calibration_report(const LabeledDataset& ds);

}  // namespace iplab::data
