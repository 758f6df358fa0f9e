#include "cgsp/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "cgsp/error.hpp"

namespace cgsp {

bool is_power_of_two(std::size_t n) noexcept { return n != 0 && (n & (n - 1)) == 0; }

FrequencyGrid::FrequencyGrid(int dim, std::size_t side) : dim_(dim), side_(side), size_(1) {
  if (dim < 1 || dim > kMaxDim) {
    throw InvalidArgument("grid dimension must be in [1, " + std::to_string(kMaxDim) + "], got " +
                          std::to_string(dim));
  }
  if (!is_power_of_two(side) || side < 2) {
    throw InvalidArgument("grid side must be a power of two >= 2, got " + std::to_string(side));
  }
  for (int i = 0; i < dim; ++i) size_ *= side;
}

std::array<std::size_t, FrequencyGrid::kMaxDim> FrequencyGrid::coords(std::size_t flat) const noexcept {
  std::array<std::size_t, kMaxDim> c{};
  for (int axis = dim_ - 1; axis >= 0; --axis) {
    c[axis] = flat % side_;
    flat /= side_;
  }
  return c;
}

std::size_t FrequencyGrid::flat(const std::array<std::size_t, kMaxDim>& c) const noexcept {
  std::size_t f = 0;
  for (int axis = 0; axis < dim_; ++axis) f = f * side_ + c[axis];
  return f;
}

std::int64_t FrequencyGrid::wave_index(std::size_t k) const noexcept {
  const auto L = static_cast<std::int64_t>(side_);
  const auto s = static_cast<std::int64_t>(k);
  return s <= L / 2 ? s : s - L;
}

std::uint64_t FrequencyGrid::wave_index_norm2(std::size_t flat_index) const noexcept {
  const auto c = coords(flat_index);
  std::uint64_t s = 0;
  for (int axis = 0; axis < dim_; ++axis) {
    const auto m = wave_index(c[axis]);
    s += static_cast<std::uint64_t>(m * m);
  }
  return s;
}

double FrequencyGrid::radial_wavenumber(std::size_t flat_index) const noexcept {
  return 2.0 * std::numbers::pi * std::sqrt(static_cast<double>(wave_index_norm2(flat_index))) /
         static_cast<double>(side_);
}

double FrequencyGrid::periodic_distance(std::size_t flat_index) const noexcept {
  // Minimum image and wave index share the same folding.
  return std::sqrt(static_cast<double>(wave_index_norm2(flat_index)));
}

std::size_t FrequencyGrid::negated(std::size_t flat_index) const noexcept {
  auto c = coords(flat_index);
  for (int axis = 0; axis < dim_; ++axis) c[axis] = (side_ - c[axis]) % side_;
  return flat(c);
}

}  // namespace cgsp
