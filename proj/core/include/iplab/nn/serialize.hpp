#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>

#include "iplab/nn/model.hpp"

namespace iplab::nn {

inline constexpr char kWeightsMagic[4] = {'I', 'P', 'L', 'B'};
inline constexpr std::uint32_t kWeightsVersion = 1;

/// Binary weight container:
///   "IPLB" | u32 version | u32 layer count
///   per non-flatten layer: u32 kind | u32 tensor count
///     per tensor: u32 rank | u64 extents[rank] | f64 values
/// All integers and floats little-endian.
void save_weights(const Model& model, std::ostream& out);
void save_weights(const Model& model, const std::filesystem::path& path);

/// Loads weights into a freshly built Model for `spec`. Throws FormatError
/// on bad magic, version, truncation, or a layout that does not match `spec`.
Model load_weights(const ModelSpec& spec, std::istream& in);
Model load_weights(const ModelSpec& spec, const std::filesystem::path& path);

}  // namespace iplab::nn
