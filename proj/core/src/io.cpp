#include "cgsp/io.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cstring>
#include <string>

#include "cgsp/error.hpp"

namespace cgsp::io {
namespace {

constexpr std::array<char, 4> kMagic{'C', 'G', 'S', 'P'};

template <typename T>
void put_le(std::ostream& out, T value) {
  static_assert(std::is_unsigned_v<T>);
  std::array<char, sizeof(T)> bytes{};
  for (std::size_t i = 0; i < sizeof(T); ++i) bytes[i] = static_cast<char>((value >> (8 * i)) & 0xFF);
  out.write(bytes.data(), bytes.size());
}

template <typename T>
T get_le(std::istream& in, const std::filesystem::path& path) {
  std::array<unsigned char, sizeof(T)> bytes{};
  in.read(reinterpret_cast<char*>(bytes.data()), bytes.size());
  if (!in) throw IoError("truncated CGSP file: " + path.string());
  T value = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) value |= static_cast<T>(bytes[i]) << (8 * i);
  return value;
}

void put_doubles(std::ostream& out, std::span<const double> values) {
  std::vector<char> buf(values.size() * 8);
  for (std::size_t i = 0; i < values.size(); ++i) {
    const auto bits = std::bit_cast<std::uint64_t>(values[i]);
    for (std::size_t b = 0; b < 8; ++b) buf[i * 8 + b] = static_cast<char>((bits >> (8 * b)) & 0xFF);
  }
  out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

std::vector<double> get_doubles(std::istream& in, std::size_t n, const std::filesystem::path& path) {
  std::vector<unsigned char> buf(n * 8);
  in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
  if (!in) throw IoError("truncated CGSP record in " + path.string());
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t bits = 0;
    for (std::size_t b = 0; b < 8; ++b) bits |= static_cast<std::uint64_t>(buf[i * 8 + b]) << (8 * b);
    out[i] = std::bit_cast<double>(bits);
  }
  return out;
}

}  // namespace

FrequencyGrid Header::grid() const {
  if (shape.empty()) throw IoError("CGSP header has no shape");
  for (auto s : shape) {
    if (s != shape.front()) throw IoError("CGSP data is not a cubic grid");
  }
  return FrequencyGrid(static_cast<int>(dim), static_cast<std::size_t>(shape.front()));
}

std::size_t Header::points() const {
  std::size_t n = 1;
  for (auto s : shape) n *= static_cast<std::size_t>(s);
  return n;
}

Writer::Writer(const std::filesystem::path& path, const FrequencyGrid& grid, std::uint64_t count)
    : path_(path), out_(path, std::ios::binary | std::ios::trunc), points_(grid.size()), expected_(count) {
  if (!out_) throw IoError("cannot open " + path.string() + " for writing");
  out_.write(kMagic.data(), kMagic.size());
  put_le<std::uint32_t>(out_, kFormatVersion);
  put_le<std::uint32_t>(out_, static_cast<std::uint32_t>(grid.dim()));
  for (int i = 0; i < grid.dim(); ++i) put_le<std::uint64_t>(out_, grid.side());
  put_le<std::uint64_t>(out_, count);
  if (!out_) throw IoError("write failed: " + path.string());
}

void Writer::write(std::span<const double> x, std::span<const double> y) {
  if (x.size() != points_ || y.size() != points_) throw InvalidArgument("record size does not match CGSP shape");
  if (written_ >= expected_) throw InvalidArgument("more CGSP records than declared in the header");
  put_doubles(out_, x);
  put_doubles(out_, y);
  if (!out_) throw IoError("write failed: " + path_.string());
  ++written_;
}

void Writer::close() {
  if (!out_.is_open()) return;
  out_.close();
  if (!out_) throw IoError("closing " + path_.string() + " failed");
  if (written_ != expected_) {
    throw IoError("CGSP file " + path_.string() + " holds " + std::to_string(written_) + " of " +
                  std::to_string(expected_) + " declared records");
  }
}

Writer::~Writer() {
  if (out_.is_open()) out_.close();
}

Reader::Reader(const std::filesystem::path& path) : path_(path), in_(path, std::ios::binary) {
  if (!in_) throw IoError("cannot open " + path.string());
  std::array<char, 4> magic{};
  in_.read(magic.data(), magic.size());
  if (!in_ || magic != kMagic) throw IoError(path.string() + " is not a CGSP file");
  header_.version = get_le<std::uint32_t>(in_, path_);
  if (header_.version != kFormatVersion) {
    throw IoError("unsupported CGSP version " + std::to_string(header_.version) + " in " + path.string());
  }
  header_.dim = get_le<std::uint32_t>(in_, path_);
  if (header_.dim < 1 || header_.dim > FrequencyGrid::kMaxDim) throw IoError("bad CGSP dimension in " + path.string());
  for (std::uint32_t i = 0; i < header_.dim; ++i) header_.shape.push_back(get_le<std::uint64_t>(in_, path_));
  header_.count = get_le<std::uint64_t>(in_, path_);
}

std::optional<std::pair<std::vector<double>, std::vector<double>>> Reader::next() {
  if (read_ >= header_.count) return std::nullopt;
  auto x = get_doubles(in_, header_.points(), path_);
  auto y = get_doubles(in_, header_.points(), path_);
  ++read_;
  return std::make_pair(std::move(x), std::move(y));
}

std::string format_double(double v) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

void write_lag_csv(const std::filesystem::path& path, std::span<const std::size_t> lags,
                   std::span<const double> values, std::span<const double> stderrs) {
  if (values.size() != lags.size() || stderrs.size() != lags.size()) {
    throw InvalidArgument("CSV columns differ in length");
  }
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << "lag,value,stderr\n";
  for (std::size_t i = 0; i < lags.size(); ++i) {
    out << lags[i] << ',' << format_double(values[i]) << ',' << format_double(stderrs[i]) << '\n';
  }
  if (!out) throw IoError("write failed: " + path.string());
}

void write_columns_csv(const std::filesystem::path& path, const std::vector<std::string>& names,
                       const std::vector<std::span<const double>>& columns) {
  if (names.size() != columns.size()) throw InvalidArgument("CSV header/column count mismatch");
  const std::size_t rows = columns.empty() ? 0 : columns.front().size();
  for (const auto& c : columns) {
    if (c.size() != rows) throw InvalidArgument("CSV columns differ in length");
  }
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  for (std::size_t j = 0; j < names.size(); ++j) out << (j ? "," : "") << names[j];
  out << '\n';
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < columns.size(); ++j) out << (j ? "," : "") << format_double(columns[j][i]);
    out << '\n';
  }
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace cgsp::io
