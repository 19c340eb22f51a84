#include "iplab/nn/serialize.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <string>

#include "iplab/error.hpp"

namespace iplab::nn {

static_assert(std::endian::native == std::endian::little, "weight files assume a little-endian host");

namespace {

template <typename T>
void put(std::ostream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}

  template <typename T>
  T get(const char* what) {
    T v{};
    in_.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (in_.gcount() != static_cast<std::streamsize>(sizeof(T))) {
      throw FormatError(offset_, std::string("truncated while reading ") + what);
    }
    offset_ += sizeof(T);
    return v;
  }

  void bytes(char* dst, std::size_t n, const char* what) {
    in_.read(dst, static_cast<std::streamsize>(n));
    if (in_.gcount() != static_cast<std::streamsize>(n)) {
      throw FormatError(offset_, std::string("truncated while reading ") + what);
    }
    offset_ += n;
  }

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::istream& in_;
  std::size_t offset_ = 0;
};

const std::vector<Tensor>& params_of(const Layer& layer) {
  return std::visit([](const auto& l) -> const std::vector<Tensor>& { return l.params(); }, layer);
}

}  // namespace

void save_weights(const Model& model, std::ostream& out) {
  out.write(kWeightsMagic, 4);
  put<std::uint32_t>(out, kWeightsVersion);
  std::uint32_t count = 0;
  for (const auto& layer : model.layers()) count += kind_of(layer) != LayerKind::flatten ? 1 : 0;
  put<std::uint32_t>(out, count);
  for (const auto& layer : model.layers()) {
    if (kind_of(layer) == LayerKind::flatten) continue;
    const auto& params = params_of(layer);
    put<std::uint32_t>(out, static_cast<std::uint32_t>(kind_of(layer)));
    put<std::uint32_t>(out, static_cast<std::uint32_t>(params.size()));
    for (const auto& p : params) {
      put<std::uint32_t>(out, static_cast<std::uint32_t>(p.rank()));
      for (auto d : p.shape()) put<std::uint64_t>(out, d);
      out.write(reinterpret_cast<const char*>(p.data()), static_cast<std::streamsize>(p.size() * sizeof(double)));
    }
  }
  if (!out) throw IoError("failed to write weights");
}

void save_weights(const Model& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  save_weights(model, out);
}

Model load_weights(const ModelSpec& spec, std::istream& in) {
  Model model(spec);
  Reader r(in);
  char magic[4];
  r.bytes(magic, 4, "magic");
  if (std::memcmp(magic, kWeightsMagic, 4) != 0) throw FormatError(0, "bad magic, not a weights file");
  const auto version = r.get<std::uint32_t>("version");
  if (version != kWeightsVersion) {
    throw FormatError(4, "unsupported version " + std::to_string(version));
  }
  std::uint32_t expected = 0;
  for (const auto& layer : model.layers()) expected += kind_of(layer) != LayerKind::flatten ? 1 : 0;
  const std::size_t count_at = r.offset();
  const auto count = r.get<std::uint32_t>("layer count");
  if (count != expected) {
    throw FormatError(count_at, "file has " + std::to_string(count) + " layers, spec has " +
                                    std::to_string(expected));
  }

  for (auto& layer : model.layers()) {
    if (kind_of(layer) == LayerKind::flatten) continue;
    auto& params = std::visit([](auto& l) -> std::vector<Tensor>& { return l.params(); }, layer);
    const std::size_t kind_at = r.offset();
    const auto kind = r.get<std::uint32_t>("layer kind");
    if (kind != static_cast<std::uint32_t>(kind_of(layer))) throw FormatError(kind_at, "layer kind mismatch");
    const auto tensors = r.get<std::uint32_t>("tensor count");
    if (tensors != params.size()) throw FormatError(kind_at + 4, "tensor count mismatch");
    for (auto& p : params) {
      const std::size_t shape_at = r.offset();
      const auto rank = r.get<std::uint32_t>("rank");
      if (rank != p.rank()) throw FormatError(shape_at, "tensor rank mismatch");
      numerics::Shape shape(rank);
      for (auto& d : shape) d = static_cast<std::size_t>(r.get<std::uint64_t>("extent"));
      if (shape != p.shape()) {
        throw FormatError(shape_at, "tensor shape " + numerics::shape_string(shape) + " does not match " +
                                        numerics::shape_string(p.shape()));
      }
      std::vector<double> values(p.size());
      const std::size_t values_at = r.offset();
      r.bytes(reinterpret_cast<char*>(values.data()), values.size() * sizeof(double), "tensor values");
      try {
        p = Tensor(shape, std::move(values));
      } catch (const NumericIntegrityError& e) {
        throw FormatError(values_at, e.what());
      }
    }
  }
  return model;
}

Model load_weights(const ModelSpec& spec, const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return load_weights(spec, in);
}

}  // namespace iplab::nn
