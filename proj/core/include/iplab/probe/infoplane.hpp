#pragma once

#include <filesystem>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "iplab/infotheory/estimators.hpp"
#include "iplab/probe/trace.hpp"

namespace iplab::probe {

enum class Estimator { binned, kt };

std::string_view to_string(Estimator e) noexcept;
Estimator estimator_from_string(std::string_view name);

struct InfoPlaneParams {
  Estimator estimator = Estimator::binned;
  int bins = infotheory::kDefaultBins;
  double noise_var = infotheory::kDefaultNoiseVariance;
};

struct InfoPlanePoint {
  int layer = 0;
  int epoch = 0;
  double i_xm_bits = 0.0;
  double i_ym_bits = 0.0;
  Estimator estimator = Estimator::binned;

  friend bool operator==(const InfoPlanePoint&, const InfoPlanePoint&) = default;
};

/// I(X;M) and I(Y;M) of one activation matrix. X is the identity of each test
/// row. binned: plug-in MI of binned rows. kt: I(X;M) is the pairwise-KL
/// entropy bound of M (noise entropy cancels) and I(Y;M) = H(M) - H(M|Y).
/// Both are clamped at 0.
InfoPlanePoint infoplane_point(const Tensor& activations, std::span<const int> labels, const InfoPlaneParams& params);

/// One point per (epoch, layer) in archive order, computed in parallel.
/// Throws EmptyInputError for an empty archive.
std::vector<InfoPlanePoint> compute_infoplane(const RunArchive& archive, const InfoPlaneParams& params);

/// Same result as loading then computing, but reads the trace file in chunks.
std::vector<InfoPlanePoint> compute_infoplane(const std::filesystem::path& trace_path, const InfoPlaneParams& params);

/// CSV: layer,epoch,i_xm_bits,i_ym_bits,estimator
void write_infoplane_csv(const std::vector<InfoPlanePoint>& points, std::ostream& out);
std::vector<InfoPlanePoint> read_infoplane_csv(std::istream& in);

/// Scatter plot, one series per layer, colour ramp over epochs.
void write_infoplane_svg(const std::vector<InfoPlanePoint>& points, std::ostream& out);

enum class ExportFormat { csv, svg };
/// Throws EmptyInputError for no points and IoError on write failures.
void export_infoplane(const std::vector<InfoPlanePoint>& points, ExportFormat format,
                      const std::filesystem::path& path);

}  // namespace iplab::probe
