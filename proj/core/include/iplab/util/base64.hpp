#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace iplab::util {

/// Standard alphabet with padding.
std::string base64_encode(std::span<const std::uint8_t> bytes);
/// Throws ValidationError on characters outside the alphabet or bad padding.
std::vector<std::uint8_t> base64_decode(std::string_view text);

/// Little-endian f64 payload helpers.
std::string encode_f64(std::span<const double> values);
std::vector<double> decode_f64(std::string_view text);

}  // namespace iplab::util
