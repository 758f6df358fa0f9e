#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace cgsp {

/// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t z) noexcept;

/// Seed of realization k in an ensemble:
///   mix64(master + (k + 1) * 0x9E3779B97F4A7C15).
/// Part of the reproducibility contract; do not change.
std::uint64_t child_seed(std::uint64_t master, std::uint64_t k) noexcept;

/// Standard normal deviates from mt19937_64 via the Marsaglia polar method.
/// Uniforms are built from the top 53 bits, so the stream is identical on
/// every conforming standard library.
class NormalStream {
 public:
  explicit NormalStream(std::uint64_t seed) : engine_(seed) {}
  double operator()();

 private:
  double uniform();

  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

struct WhitePair {
  std::vector<double> u;
  std::vector<double> v;
};

/// Two independent i.i.d. N(0,1) arrays of length n; u is drawn first.
WhitePair white_pair(std::size_t n, std::uint64_t seed);

}  // namespace cgsp
