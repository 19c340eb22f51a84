#include "iplab/util/base64.hpp"

#include <bit>
#include <cstring>

#include <sodium.h>

#include "iplab/error.hpp"

namespace iplab::util {

static_assert(std::endian::native == std::endian::little, "f64 payloads assume a little-endian host");

std::string base64_encode(std::span<const std::uint8_t> bytes) {
  constexpr int variant = sodium_base64_VARIANT_ORIGINAL;
  std::string out(sodium_base64_encoded_len(bytes.size(), variant), '\0');
  sodium_bin2base64(out.data(), out.size(), bytes.data(), bytes.size(), variant);
  out.pop_back();  // trailing NUL
  return out;
}

std::vector<std::uint8_t> base64_decode(std::string_view text) {
  std::vector<std::uint8_t> out(text.size() / 4 * 3 + 3);
  std::size_t len = 0;
  const char* end = nullptr;
  if (sodium_base642bin(out.data(), out.size(), text.data(), text.size(), nullptr, &len, &end,
                        sodium_base64_VARIANT_ORIGINAL) != 0 ||
      end != text.data() + text.size()) {
    throw ValidationError("invalid base64 payload");
  }
  out.resize(len);
  return out;
}

std::string encode_f64(std::span<const double> values) {
  return base64_encode({reinterpret_cast<const std::uint8_t*>(values.data()), values.size() * sizeof(double)});
}

std::vector<double> decode_f64(std::string_view text) {
  const auto bytes = base64_decode(text);
  if (bytes.size() % sizeof(double) != 0) throw ValidationError("f64 payload length is not a multiple of 8");
  std::vector<double> out(bytes.size() / sizeof(double));
  std::memcpy(out.data(), bytes.data(), bytes.size());
  return out;
}

}  // namespace iplab::util
