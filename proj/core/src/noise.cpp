#include "cgsp/noise.hpp"

#include <cmath>

namespace cgsp {

std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t child_seed(std::uint64_t master, std::uint64_t k) noexcept {
  return mix64(master + (k + 1) * 0x9E3779B97F4A7C15ULL);
}

double NormalStream::uniform() {
  // (0, 1) open interval on 53 bits.
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
}

double NormalStream::operator()() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u, v, s;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * f;
  has_spare_ = true;
  return u * f;
}

WhitePair white_pair(std::size_t n, std::uint64_t seed) {
  NormalStream normal(seed);
  WhitePair w{std::vector<double>(n), std::vector<double>(n)};
  for (auto& x : w.u) x = normal();
  for (auto& x : w.v) x = normal();
  return w;
}

}  // namespace cgsp
