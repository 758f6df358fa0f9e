#pragma once

// CGSP binary container:
//   bytes 0-3   "CGSP"
//   u32         format version (1)
//   u32         dimension d
//   u64 x d     side length per axis
//   u64         realization count
//   then per realization: N x-values followed by N y-values, N = prod(shape),
//   each an IEEE-754 binary64.  All integers and doubles little-endian.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cgsp/grid.hpp"

namespace cgsp::io {

inline constexpr std::uint32_t kFormatVersion = 1;

struct Header {
  std::uint32_t version = kFormatVersion;
  std::uint32_t dim = 1;
  std::vector<std::uint64_t> shape;
  std::uint64_t count = 0;

  FrequencyGrid grid() const;
  std::size_t points() const;
};

class Writer {
 public:
  Writer(const std::filesystem::path& path, const FrequencyGrid& grid, std::uint64_t count);
  void write(std::span<const double> x, std::span<const double> y);
  /// Throws IoError unless exactly `count` records were written.
  void close();
  ~Writer();

 private:
  std::filesystem::path path_;
  std::ofstream out_;
  std::size_t points_;
  std::uint64_t expected_;
  std::uint64_t written_ = 0;
};

class Reader {
 public:
  explicit Reader(const std::filesystem::path& path);
  const Header& header() const noexcept { return header_; }
  /// Next (x, y) record, or nullopt after the last one.
  std::optional<std::pair<std::vector<double>, std::vector<double>>> next();

 private:
  std::filesystem::path path_;
  std::ifstream in_;
  Header header_;
  std::uint64_t read_ = 0;
};

/// "lag,value,stderr" rows with round-trip (17 significant digit) values.
void write_lag_csv(const std::filesystem::path& path, std::span<const std::size_t> lags,
                   std::span<const double> values, std::span<const double> stderrs);

/// Generic CSV with a header line; every column must have the same length.
void write_columns_csv(const std::filesystem::path& path, const std::vector<std::string>& names,
                       const std::vector<std::span<const double>>& columns);

std::string format_double(double v);

}  // namespace cgsp::io
