#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>

#include "iplab/data/dataset.hpp"

namespace iplab::data {

/// CSV with header `f0,...,f{d-1},label[,group]`. Values are written with
/// 17 significant digits, so a roundtrip is exact.
void write_csv(const LabeledDataset& ds, std::ostream& out);
void write_csv(const LabeledDataset& ds, const std::filesystem::path& path);

/// Throws ParseError (1-based line) on bad headers, wrong arity or
/// non-numeric cells. The result has variant raw.
LabeledDataset read_csv(std::istream& in);
LabeledDataset load_csv(const std::filesystem::path& path);

inline constexpr std::uint32_t kIdxImagesMagic = 0x00000803;
inline constexpr std::uint32_t kIdxLabelsMagic = 0x00000801;

/// MNIST IDX pair, images flattened to rows and scaled to [0, 1].
/// Throws FormatError with the byte offset on bad magic, mismatched counts or
/// truncation, IoError when a file cannot be opened.
LabeledDataset load_mnist_idx(const std::filesystem::path& images, const std::filesystem::path& labels,
                              std::optional<std::size_t> limit = std::nullopt);

}  // namespace iplab::data
