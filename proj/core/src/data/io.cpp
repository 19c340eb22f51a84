#include "iplab/data/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "iplab/error.hpp"

namespace iplab::data {

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

template <typename T>
T parse_cell(std::string_view cell, std::size_t line, std::size_t column) {
  cell = trim(cell);
  if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
  T value{};
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (cell.empty() || ec != std::errc() || ptr != cell.data() + cell.size()) {
    throw ParseError(line, "column " + std::to_string(column + 1) + ": '" + std::string(cell) + "' is not a number");
  }
  return value;
}

}  // namespace

void write_csv(const LabeledDataset& ds, std::ostream& out) {
  ds.check();
  const std::size_t d = ds.width();
  for (std::size_t c = 0; c < d; ++c) out << 'f' << c << ',';
  out << "label";
  if (!ds.groups.empty()) out << ",group";
  out << '\n';
  char buf[32];
  for (std::size_t r = 0; r < ds.size(); ++r) {
    for (double v : ds.samples.row(r)) {
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out << buf << ',';
    }
    out << ds.labels[r];
    if (!ds.groups.empty()) out << ',' << ds.groups[r];
    out << '\n';
  }
  if (!out) throw IoError("failed to write CSV");
}

void write_csv(const LabeledDataset& ds, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  write_csv(ds, out);
}

LabeledDataset read_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!trim(line).empty()) break;
  }
  if (trim(line).empty()) throw ParseError(line_no == 0 ? 1 : line_no, "missing header row");

  const auto header = split_fields(line);
  std::size_t label_col = header.size();
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (trim(header[c]) == "label") label_col = c;
  }
  if (label_col == header.size()) throw ParseError(line_no, "header has no 'label' column");
  const bool has_group = label_col + 2 == header.size() && trim(header.back()) == "group";
  if (label_col + 1 != header.size() && !has_group) {
    throw ParseError(line_no, "'label' must be the last column, optionally followed by 'group'");
  }
  const std::size_t d = label_col;
  for (std::size_t c = 0; c < d; ++c) {
    if (trim(header[c]) != "f" + std::to_string(c)) {
      throw ParseError(line_no, "feature column " + std::to_string(c) + " must be named f" + std::to_string(c));
    }
  }

  LabeledDataset ds;
  std::vector<double> values;
  std::size_t rows = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() != header.size()) {
      throw ParseError(line_no, "expected " + std::to_string(header.size()) + " fields, got " +
                                    std::to_string(fields.size()));
    }
    for (std::size_t c = 0; c < d; ++c) values.push_back(parse_cell<double>(fields[c], line_no, c));
    ds.labels.push_back(parse_cell<int>(fields[d], line_no, d));
    if (has_group) ds.groups.push_back(parse_cell<int>(fields[d + 1], line_no, d + 1));
    ++rows;
  }
  try {
    ds.samples = Tensor({rows, d}, std::move(values));
  } catch (const NumericIntegrityError& e) {
    throw ParseError(line_no, e.what());
  }
  ds.variant = Variant::raw;
  return ds;
}

LabeledDataset load_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  auto ds = read_csv(in);
  ds.meta = "csv " + path.filename().string();
  return ds;
}

namespace {

class IdxReader {
 public:
  explicit IdxReader(const std::filesystem::path& path) : in_(path, std::ios::binary), path_(path.string()) {
    if (!in_) throw IoError("cannot open " + path_);
  }

  std::uint32_t u32() {
    unsigned char b[4];
    read(reinterpret_cast<char*>(b), 4);
    return (std::uint32_t{b[0]} << 24) | (std::uint32_t{b[1]} << 16) | (std::uint32_t{b[2]} << 8) | b[3];
  }

  void read(char* dst, std::size_t n) {
    in_.read(dst, static_cast<std::streamsize>(n));
    if (in_.gcount() != static_cast<std::streamsize>(n)) {
      throw FormatError(offset_ + static_cast<std::size_t>(in_.gcount()), path_ + ": truncated");
    }
    offset_ += n;
  }

  std::size_t offset() const noexcept { return offset_; }
  const std::string& path() const noexcept { return path_; }

 private:
  std::ifstream in_;
  std::string path_;
  std::size_t offset_ = 0;
};

}  // namespace

LabeledDataset load_mnist_idx(const std::filesystem::path& images, const std::filesystem::path& labels,
                              std::optional<std::size_t> limit) {
  IdxReader img(images);
  IdxReader lab(labels);
  if (const auto m = img.u32(); m != kIdxImagesMagic) {
    throw FormatError(0, img.path() + ": bad image magic " + std::to_string(m));
  }
  if (const auto m = lab.u32(); m != kIdxLabelsMagic) {
    throw FormatError(0, lab.path() + ": bad label magic " + std::to_string(m));
  }
  const std::size_t n_img = img.u32();
  const std::size_t rows = img.u32();
  const std::size_t cols = img.u32();
  const std::size_t n_lab = lab.u32();
  if (n_img != n_lab) {
    throw FormatError(4, "image count " + std::to_string(n_img) + " != label count " + std::to_string(n_lab));
  }
  const std::size_t n = limit ? std::min(*limit, n_img) : n_img;
  const std::size_t d = rows * cols;

  std::vector<unsigned char> pixels(n * d);
  img.read(reinterpret_cast<char*>(pixels.data()), pixels.size());
  std::vector<unsigned char> raw_labels(n);
  lab.read(reinterpret_cast<char*>(raw_labels.data()), raw_labels.size());

  LabeledDataset ds;
  std::vector<double> values(pixels.size());
  for (std::size_t i = 0; i < pixels.size(); ++i) values[i] = pixels[i] / 255.0;
  ds.samples = Tensor({n, d}, std::move(values));
  ds.labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (raw_labels[i] > 9) throw FormatError(8 + i, "label " + std::to_string(raw_labels[i]) + " outside 0..9");
    ds.labels.push_back(raw_labels[i]);
  }
  ds.variant = Variant::raw;
  ds.meta = "mnist " + images.filename().string();
  return ds;
}

}  // namespace iplab::data
