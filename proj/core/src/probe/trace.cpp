#include "iplab/probe/trace.hpp"

#include <cmath>
#include <istream>
#include <ostream>

#include <nlohmann/json.hpp>

#include "iplab/error.hpp"
#include "iplab/util/base64.hpp"

namespace iplab::probe {

using nlohmann::json;

EpochTrace capture_epoch(int epoch, const nn::Model& model, std::span<const nn::GradientSummary> gradients,
                         const Tensor& test_samples, std::span<const int> test_labels) {
  if (test_samples.rank() != 2 || test_samples.rows() != test_labels.size()) {
    throw DimensionError("probe test samples and labels differ in length");
  }
  const auto traced = model.traced_layers();
  if (!gradients.empty() && gradients.size() != traced.size()) {
    throw DimensionError("gradient summaries do not match the traced layers");
  }
  EpochTrace trace;
  trace.epoch = epoch;
  trace.labels.assign(test_labels.begin(), test_labels.end());
  auto activations = model.forward_trace(test_samples);
  const auto layers = model.layers();
  for (std::size_t k = 0; k < traced.size(); ++k) {
    LayerRecord rec;
    double sum_sq = 0.0;
    const auto& params =
        std::visit([](const auto& l) -> const std::vector<Tensor>& { return l.params(); }, layers[traced[k]]);
    for (const auto& p : params) {
      for (double v : p.values()) sum_sq += v * v;
    }
    rec.weight_l2 = std::sqrt(sum_sq);
    if (!gradients.empty()) {
      rec.grad_mean = gradients[k].mean;
      rec.grad_std = gradients[k].stddev;
    }
    rec.test_activations = std::move(activations[k]);
    trace.layers.push_back(std::move(rec));
  }
  return trace;
}

std::string trace_to_json_line(const EpochTrace& trace) {
  json j;
  j["epoch"] = trace.epoch;
  j["labels"] = trace.labels;
  json layers = json::array();
  for (const auto& rec : trace.layers) {
    layers.push_back({{"weight_l2", rec.weight_l2},
                      {"grad_mean", rec.grad_mean},
                      {"grad_std", rec.grad_std},
                      {"shape", rec.test_activations.shape()},
                      {"activations", util::encode_f64(rec.test_activations.values())}});
  }
  j["layers"] = std::move(layers);
  return j.dump();
}

namespace {

EpochTrace parse_trace(const std::string& line, std::size_t line_no) {
  try {
    const json j = json::parse(line);
    EpochTrace trace;
    trace.epoch = j.at("epoch").get<int>();
    trace.labels = j.at("labels").get<std::vector<int>>();
    for (const auto& l : j.at("layers")) {
      LayerRecord rec;
      rec.weight_l2 = l.at("weight_l2").get<double>();
      rec.grad_mean = l.at("grad_mean").get<double>();
      rec.grad_std = l.at("grad_std").get<double>();
      auto shape = l.at("shape").get<numerics::Shape>();
      rec.test_activations = Tensor(std::move(shape), util::decode_f64(l.at("activations").get<std::string>()));
      if (rec.test_activations.rank() != 2 || rec.test_activations.rows() != trace.labels.size()) {
        throw ValidationError("activation rows do not match the label count");
      }
      trace.layers.push_back(std::move(rec));
    }
    return trace;
  } catch (const json::exception& e) {
    throw ParseError(line_no, std::string("malformed trace: ") + e.what());
  } catch (const Error& e) {
    throw ParseError(line_no, std::string("malformed trace: ") + e.what());
  }
}

}  // namespace

EpochTrace trace_from_json_line(const std::string& line) { return parse_trace(line, 1); }

void save_archive(const RunArchive& archive, std::ostream& out) {
  for (const auto& t : archive.epochs) out << trace_to_json_line(t) << '\n';
  if (!out) throw IoError("failed to write trace archive");
}

void save_archive(const RunArchive& archive, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  save_archive(archive, out);
}

RunArchive load_archive(std::istream& in) {
  RunArchive archive;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    archive.epochs.push_back(parse_trace(line, line_no));
  }
  return archive;
}

RunArchive load_archive(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return load_archive(in);
}

Recorder::Recorder(const Tensor& test_samples, std::span<const int> test_labels, Options opts) : opts_(opts) {
  if (test_samples.rank() != 2 || test_samples.rows() != test_labels.size()) {
    throw DimensionError("probe test samples and labels differ in length");
  }
  if (opts_.stride < 1) throw ParameterError("probe stride must be >= 1");
  if (opts_.cap == 0) throw ParameterError("probe test cap must be >= 1");
  const std::size_t n = std::min(opts_.cap, test_samples.rows());
  const std::size_t w = test_samples.cols();
  test_ = Tensor({n, w}, std::vector<double>(test_samples.data(), test_samples.data() + n * w));
  labels_.assign(test_labels.begin(), test_labels.begin() + static_cast<std::ptrdiff_t>(n));
}

void Recorder::open_sink(const std::filesystem::path& path) {
  sink_ = std::make_unique<std::ofstream>(path);
  if (!*sink_) throw IoError("cannot open trace file " + path.string());
  sink_path_ = path.string();
}

void Recorder::operator()(const nn::EpochContext& ctx) {
  if ((ctx.epoch - 1) % opts_.stride != 0) return;
  auto trace = capture_epoch(ctx.epoch, ctx.model, ctx.gradients, test_, labels_);
  if (sink_) {
    *sink_ << trace_to_json_line(trace) << '\n';
    sink_->flush();
    if (!*sink_) throw IoError("failed to write trace file " + sink_path_);
  }
  if (opts_.keep) archive_.epochs.push_back(std::move(trace));
  ++captured_;
}

nn::EpochCallback Recorder::callback() {
  return [this](const nn::EpochContext& ctx) { (*this)(ctx); };
}

}  // namespace iplab::probe
