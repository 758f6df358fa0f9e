#pragma once

#include <complex>
#include <span>

#include "cgsp/grid.hpp"

namespace cgsp::detail {

/// In-place complex DFT over a grid, backed by FFTW.  Plans are created once
/// per grid shape (FFTW_ESTIMATE | FFTW_UNALIGNED, so the chosen codelets
/// never depend on buffer alignment) and executed with the thread-safe
/// new-array interface.
class Fft {
 public:
  static const Fft& for_grid(const FrequencyGrid& grid);

  /// X(q) = sum_n x(n) exp(-2 pi i q.n / L)
  void forward(std::span<std::complex<double>> data) const;
  /// x(n) = (1/L^d) sum_q X(q) exp(+2 pi i q.n / L)
  void inverse(std::span<std::complex<double>> data) const;

  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;
  ~Fft();

 private:
  explicit Fft(const FrequencyGrid& grid);

  FrequencyGrid grid_;
  void* forward_plan_ = nullptr;
  void* inverse_plan_ = nullptr;
};

}  // namespace cgsp::detail
