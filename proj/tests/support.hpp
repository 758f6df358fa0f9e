#pragma once

#include <cmath>
#include <complex>
#include <cstdlib>
#include <filesystem>
#include <numbers>
#include <string>
#include <vector>

namespace cgsp::test {

// Naive O(N^2) one-dimensional DFT, independent of the library's FFT.
inline std::vector<std::complex<double>> naive_dft(const std::vector<std::complex<double>>& in, int sign) {
  const std::size_t n = in.size();
  std::vector<std::complex<double>> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<double> acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double phase = sign * 2.0 * std::numbers::pi * static_cast<double>((k * j) % n) / static_cast<double>(n);
      acc += in[j] * std::complex<double>(std::cos(phase), std::sin(phase));
    }
    out[k] = acc;
  }
  return out;
}

inline std::filesystem::path scratch_dir(const std::string& name) {
  const char* env = std::getenv("CGSP_TEST_TMP");
  std::filesystem::path base = env ? env : std::filesystem::temp_directory_path() / "cgsp-tests";
  auto dir = base / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace cgsp::test
