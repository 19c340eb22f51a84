#pragma once

#include <cstddef>
#include <filesystem>
#include <fstream>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "iplab/nn/train.hpp"

namespace iplab::probe {

using numerics::Tensor;

struct LayerRecord {
  double weight_l2 = 0.0;
  double grad_mean = 0.0;
  double grad_std = 0.0;
  Tensor test_activations;  // [test samples x units]

  friend bool operator==(const LayerRecord&, const LayerRecord&) = default;
};

/// One epoch of telemetry; `labels` are the labels of the probed test rows.
struct EpochTrace {
  int epoch = 0;
  std::vector<int> labels;
  std::vector<LayerRecord> layers;

  friend bool operator==(const EpochTrace&, const EpochTrace&) = default;
};

struct RunArchive {
  std::vector<EpochTrace> epochs;

  bool empty() const noexcept { return epochs.empty(); }
  friend bool operator==(const RunArchive&, const RunArchive&) = default;
};

inline constexpr std::size_t kDefaultTestCap = 512;

/// Weight L2 norm, gradient moments and test-set activations of every traced
/// layer (see Model::traced_layers). `gradients` may be empty, which records
/// zero gradient statistics.
EpochTrace capture_epoch(int epoch, const nn::Model& model, std::span<const nn::GradientSummary> gradients,
                         const Tensor& test_samples, std::span<const int> test_labels);

/// One JSON object per line:
///   {"epoch":E,"labels":[...],"layers":[{"weight_l2":..,"grad_mean":..,
///    "grad_std":..,"shape":[n,u],"activations":"<base64 LE f64>"}]}
std::string trace_to_json_line(const EpochTrace& trace);
/// Throws ParseError (line 1) when the text is not a valid trace object.
EpochTrace trace_from_json_line(const std::string& line);

void save_archive(const RunArchive& archive, std::ostream& out);
void save_archive(const RunArchive& archive, const std::filesystem::path& path);
/// Blank lines are skipped; an empty file is an empty archive. Malformed lines
/// throw ParseError carrying the 1-based line number.
RunArchive load_archive(std::istream& in);
RunArchive load_archive(const std::filesystem::path& path);

/// Epoch callback that captures every `stride`-th epoch (1, 1+stride, ...) on
/// the first `cap` test rows, appends each trace to `sink` (if set) and keeps
/// it in memory when `keep` is true.
class Recorder {
 public:
  struct Options {
    std::size_t cap = kDefaultTestCap;
    int stride = 1;
    bool keep = true;
  };

  Recorder(const Tensor& test_samples, std::span<const int> test_labels, Options opts);
  Recorder(const Tensor& test_samples, std::span<const int> test_labels)
      : Recorder(test_samples, test_labels, Options{}) {}

  /// Streams traces to `path` (truncated). Throws IoError if it cannot be opened.
  void open_sink(const std::filesystem::path& path);

  void operator()(const nn::EpochContext& ctx);
  nn::EpochCallback callback();

  const RunArchive& archive() const noexcept { return archive_; }
  std::size_t captured() const noexcept { return captured_; }

 private:
  Tensor test_;
  std::vector<int> labels_;
  Options opts_;
  RunArchive archive_;
  std::unique_ptr<std::ofstream> sink_;
  std::string sink_path_;
  std::size_t captured_ = 0;
};

}  // namespace iplab::probe
