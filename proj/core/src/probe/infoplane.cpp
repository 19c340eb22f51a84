#include "iplab/probe/infoplane.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>

#include "iplab/error.hpp"
#include "iplab/util/parallel.hpp"

namespace iplab::probe {

std::string_view to_string(Estimator e) noexcept { return e == Estimator::binned ? "binned" : "kt"; }

Estimator estimator_from_string(std::string_view name) {
  if (name == "binned") return Estimator::binned;
  if (name == "kt") return Estimator::kt;
  throw ParameterError("unknown estimator '" + std::string(name) + "' (binned|kt)");
}

InfoPlanePoint infoplane_point(const Tensor& activations, std::span<const int> labels, const InfoPlaneParams& params) {
  InfoPlanePoint p;
  p.estimator = params.estimator;
  const infotheory::ActivationSample acts(activations, std::vector<int>(labels.begin(), labels.end()));
  if (params.estimator == Estimator::binned) {
    std::vector<infotheory::Symbol> x_ids(acts.samples());
    std::iota(x_ids.begin(), x_ids.end(), infotheory::Symbol{0});
    const auto mi = infotheory::binned_mi(acts, x_ids, params.bins);
    p.i_xm_bits = std::max(0.0, mi.i_xm);
    p.i_ym_bits = std::max(0.0, mi.i_ym);
  } else {
    p.i_xm_bits = std::max(0.0, infotheory::kt_entropy_upper(acts, params.noise_var));
    p.i_ym_bits = std::max(0.0, infotheory::kt_mutual_information_labels(acts, params.noise_var));
  }
  return p;
}

namespace {

void compute_into(std::span<const EpochTrace> epochs, const InfoPlaneParams& params,
                  std::vector<InfoPlanePoint>& out) {
  std::vector<std::pair<std::size_t, std::size_t>> tasks;
  for (std::size_t e = 0; e < epochs.size(); ++e) {
    for (std::size_t l = 0; l < epochs[e].layers.size(); ++l) tasks.emplace_back(e, l);
  }
  const std::size_t base = out.size();
  out.resize(base + tasks.size());
  util::parallel_for(tasks.size(), [&](std::size_t t) {
    const auto [e, l] = tasks[t];
    auto p = infoplane_point(epochs[e].layers[l].test_activations, epochs[e].labels, params);
    p.layer = static_cast<int>(l);
    p.epoch = epochs[e].epoch;
    out[base + t] = p;
  });
}

}  // namespace

std::vector<InfoPlanePoint> compute_infoplane(const RunArchive& archive, const InfoPlaneParams& params) {
  if (archive.empty()) throw EmptyInputError("trace archive has no epochs");
  std::vector<InfoPlanePoint> out;
  compute_into(archive.epochs, params, out);
  return out;
}

std::vector<InfoPlanePoint> compute_infoplane(const std::filesystem::path& trace_path, const InfoPlaneParams& params) {
  constexpr std::size_t kChunk = 32;
  std::ifstream in(trace_path);
  if (!in) throw IoError("cannot open " + trace_path.string());
  std::vector<InfoPlanePoint> out;
  std::vector<EpochTrace> chunk;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      chunk.push_back(trace_from_json_line(line));
    } catch (const ParseError& e) {
      const std::string what = e.what();
      throw ParseError(line_no, what.substr(what.find(": ") + 2));
    }
    if (chunk.size() == kChunk) {
      compute_into(chunk, params, out);
      chunk.clear();
    }
  }
  compute_into(chunk, params, out);
  if (out.empty()) throw EmptyInputError("trace file " + trace_path.string() + " has no epochs");
  return out;
}

void write_infoplane_csv(const std::vector<InfoPlanePoint>& points, std::ostream& out) {
  out << "layer,epoch,i_xm_bits,i_ym_bits,estimator\n";
  char buf[96];
  for (const auto& p : points) {
    std::snprintf(buf, sizeof buf, "%d,%d,%.17g,%.17g,", p.layer, p.epoch, p.i_xm_bits, p.i_ym_bits);
    out << buf << to_string(p.estimator) << '\n';
  }
}

std::vector<InfoPlanePoint> read_infoplane_csv(std::istream& in) {
  std::vector<InfoPlanePoint> points;
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) return points;
  ++line_no;
  if (line.rfind("layer,epoch,i_xm_bits,i_ym_bits,estimator", 0) != 0) {
    throw ParseError(line_no, "unexpected infoplane CSV header");
  }
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string f[5];
    for (auto& cell : f) std::getline(row, cell, ',');
    try {
      std::size_t used = 0;
      InfoPlanePoint p;
      p.layer = std::stoi(f[0], &used);
      p.epoch = std::stoi(f[1]);
      p.i_xm_bits = std::stod(f[2]);
      p.i_ym_bits = std::stod(f[3]);
      p.estimator = estimator_from_string(f[4]);
      points.push_back(p);
    } catch (const std::exception& e) {
      throw ParseError(line_no, std::string("bad infoplane row: ") + e.what());
    }
  }
  return points;
}

namespace {

std::string ramp(double t) {
  // viridis stops
  static constexpr std::array<std::array<double, 3>, 5> stops = {{
      {68, 1, 84}, {59, 82, 139}, {33, 145, 140}, {94, 201, 98}, {253, 231, 37}}};
  t = std::clamp(t, 0.0, 1.0) * (stops.size() - 1);
  const auto i = std::min<std::size_t>(static_cast<std::size_t>(t), stops.size() - 2);
  const double f = t - static_cast<double>(i);
  char buf[8];
  int c[3];
  for (int k = 0; k < 3; ++k) c[k] = static_cast<int>(std::lround(stops[i][k] + f * (stops[i + 1][k] - stops[i][k])));
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", c[0], c[1], c[2]);
  return buf;
}

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string marker(int layer, double x, double y, const std::string& fill) {
  const double r = 4.0;
  const std::string style = " fill=\"" + fill + "\" stroke=\"#222\" stroke-width=\"0.5\"/>";
  switch (layer % 4) {
    case 0:
      return "<circle cx=\"" + num(x) + "\" cy=\"" + num(y) + "\" r=\"" + num(r) + "\"" + style;
    case 1:
      return "<rect x=\"" + num(x - r) + "\" y=\"" + num(y - r) + "\" width=\"" + num(2 * r) + "\" height=\"" +
             num(2 * r) + "\"" + style;
    case 2:
      return "<polygon points=\"" + num(x) + "," + num(y - r) + " " + num(x + r) + "," + num(y + r) + " " +
             num(x - r) + "," + num(y + r) + "\"" + style;
    default:
      return "<polygon points=\"" + num(x) + "," + num(y - r) + " " + num(x + r) + "," + num(y) + " " + num(x) +
             "," + num(y + r) + " " + num(x - r) + "," + num(y) + "\"" + style;
  }
}

}  // namespace

void write_infoplane_svg(const std::vector<InfoPlanePoint>& points, std::ostream& out) {
  if (points.empty()) throw EmptyInputError("no information-plane points to plot");
  constexpr double W = 640, H = 480, L = 70, R = 130, T = 30, B = 60;
  double x_max = 0.0, y_max = 0.0;
  int e_min = points.front().epoch, e_max = points.front().epoch, layers = 0;
  for (const auto& p : points) {
    x_max = std::max(x_max, p.i_xm_bits);
    y_max = std::max(y_max, p.i_ym_bits);
    e_min = std::min(e_min, p.epoch);
    e_max = std::max(e_max, p.epoch);
    layers = std::max(layers, p.layer + 1);
  }
  x_max = x_max > 0 ? x_max * 1.05 : 1.0;
  y_max = y_max > 0 ? y_max * 1.05 : 1.0;
  const double pw = W - L - R, ph = H - T - B;
  auto sx = [&](double v) { return L + v / x_max * pw; };
  auto sy = [&](double v) { return T + ph - v / y_max * ph; };

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 " << W
      << ' ' << H << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<g class=\"axes\" stroke=\"#000\">\n"
      << "<line x1=\"" << L << "\" y1=\"" << T + ph << "\" x2=\"" << L + pw << "\" y2=\"" << T + ph << "\"/>\n"
      << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << T + ph << "\"/>\n"
      << "</g>\n";
  for (int k = 0; k <= 4; ++k) {
    const double xv = x_max * k / 4, yv = y_max * k / 4;
    out << "<text x=\"" << num(sx(xv)) << "\" y=\"" << T + ph + 16 << "\" text-anchor=\"middle\">" << num(xv)
        << "</text>\n"
        << "<text x=\"" << L - 6 << "\" y=\"" << num(sy(yv) + 4) << "\" text-anchor=\"end\">" << num(yv)
        << "</text>\n";
  }
  out << "<text x=\"" << L + pw / 2 << "\" y=\"" << H - 18 << "\" text-anchor=\"middle\">I(X;M) [bits]</text>\n"
      << "<text x=\"18\" y=\"" << T + ph / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 " << T + ph / 2
      << ")\">I(Y;M) [bits]</text>\n";

  const double span = e_max > e_min ? static_cast<double>(e_max - e_min) : 1.0;
  for (int layer = 0; layer < layers; ++layer) {
    out << "<g class=\"series\" id=\"layer-" << layer << "\">\n";
    for (const auto& p : points) {
      if (p.layer != layer) continue;
      out << marker(layer, sx(p.i_xm_bits), sy(p.i_ym_bits), ramp((p.epoch - e_min) / span)) << '\n';
    }
    out << "</g>\n";
    const double ly = T + 10 + 20.0 * layer;
    out << marker(layer, W - R + 20, ly, "#bbbbbb") << '\n'
        << "<text x=\"" << W - R + 32 << "\" y=\"" << num(ly + 4) << "\">layer " << layer << "</text>\n";
  }
  const double by = T + 20.0 * layers + 20;
  out << "<text x=\"" << W - R + 14 << "\" y=\"" << num(by) << "\">epoch</text>\n";
  for (int k = 0; k < 10; ++k) {
    out << "<rect x=\"" << W - R + 14 << "\" y=\"" << num(by + 8 + 10.0 * k) << "\" width=\"14\" height=\"10\" fill=\""
        << ramp(k / 9.0) << "\"/>\n";
  }
  out << "<text x=\"" << W - R + 34 << "\" y=\"" << num(by + 18) << "\">" << e_min << "</text>\n"
      << "<text x=\"" << W - R + 34 << "\" y=\"" << num(by + 108) << "\">" << e_max << "</text>\n"
      << "</svg>\n";
}

void export_infoplane(const std::vector<InfoPlanePoint>& points, ExportFormat format,
                      const std::filesystem::path& path) {
  if (points.empty()) throw EmptyInputError("no information-plane points to export");
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  if (format == ExportFormat::csv) {
    write_infoplane_csv(points, out);
  } else {
    write_infoplane_svg(points, out);
  }
  out.flush();
  if (!out) throw IoError("failed to write " + path.string());
}

}  // namespace iplab::probe
