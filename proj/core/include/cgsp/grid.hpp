#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace cgsp {

/// Periodic lattice of side L in d dimensions together with its discrete
/// wavenumbers q_i = 2*pi*m_i/L.  Flat indices are row-major; bin k on an
/// axis maps to m = k for k <= L/2 and m = k - L otherwise.
class FrequencyGrid {
 public:
  static constexpr int kMaxDim = 3;

  FrequencyGrid(int dim, std::size_t side);

  int dim() const noexcept { return dim_; }
  std::size_t side() const noexcept { return side_; }
  std::size_t size() const noexcept { return size_; }

  std::array<std::size_t, kMaxDim> coords(std::size_t flat) const noexcept;
  std::size_t flat(const std::array<std::size_t, kMaxDim>& c) const noexcept;

  /// Signed wavenumber index m in [-L/2+1, L/2] for per-axis bin k.
  std::int64_t wave_index(std::size_t k) const noexcept;

  /// Sum of m_i^2 over axes; bins sharing it share |q| exactly.
  std::uint64_t wave_index_norm2(std::size_t flat) const noexcept;

  /// |q| for a flat bin.
  double radial_wavenumber(std::size_t flat) const noexcept;

  /// Periodic (minimum image) Euclidean distance of a lag vector from 0.
  double periodic_distance(std::size_t flat) const noexcept;

  /// Flat index of -q (per-axis (L-k) mod L).
  std::size_t negated(std::size_t flat) const noexcept;

  friend bool operator==(const FrequencyGrid&, const FrequencyGrid&) = default;

 private:
  int dim_;
  std::size_t side_;
  std::size_t size_;
};

bool is_power_of_two(std::size_t n) noexcept;

}  // namespace cgsp
