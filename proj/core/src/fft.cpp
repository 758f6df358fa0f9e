#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <utility>
#include <vector>

#include "cgsp/error.hpp"

namespace cgsp::detail {
namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

fftw_complex* as_fftw(std::complex<double>* p) { return reinterpret_cast<fftw_complex*>(p); }

}  // namespace

Fft::Fft(const FrequencyGrid& grid) : grid_(grid) {
  std::vector<int> n(static_cast<std::size_t>(grid.dim()), static_cast<int>(grid.side()));
  std::vector<std::complex<double>> scratch(grid.size());
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  forward_plan_ = fftw_plan_dft(grid.dim(), n.data(), as_fftw(scratch.data()), as_fftw(scratch.data()),
                                FFTW_FORWARD, flags);
  inverse_plan_ = fftw_plan_dft(grid.dim(), n.data(), as_fftw(scratch.data()), as_fftw(scratch.data()),
                                FFTW_BACKWARD, flags);
  if (forward_plan_ == nullptr || inverse_plan_ == nullptr) throw NumericalError("FFTW planning failed");
}

Fft::~Fft() {
  std::lock_guard lock(planner_mutex());
  if (forward_plan_ != nullptr) fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
  if (inverse_plan_ != nullptr) fftw_destroy_plan(static_cast<fftw_plan>(inverse_plan_));
}

const Fft& Fft::for_grid(const FrequencyGrid& grid) {
  // Plans live for the whole process.
  static auto* cache = new std::map<std::pair<int, std::size_t>, std::unique_ptr<Fft>>();
  std::lock_guard lock(planner_mutex());
  auto& slot = (*cache)[{grid.dim(), grid.side()}];
  if (!slot) slot.reset(new Fft(grid));
  return *slot;
}

void Fft::forward(std::span<std::complex<double>> data) const {
  if (data.size() != grid_.size()) throw InvalidArgument("FFT buffer size does not match grid");
  fftw_execute_dft(static_cast<fftw_plan>(forward_plan_), as_fftw(data.data()), as_fftw(data.data()));
}

void Fft::inverse(std::span<std::complex<double>> data) const {
  if (data.size() != grid_.size()) throw InvalidArgument("FFT buffer size does not match grid");
  fftw_execute_dft(static_cast<fftw_plan>(inverse_plan_), as_fftw(data.data()), as_fftw(data.data()));
  const double scale = 1.0 / static_cast<double>(grid_.size());
  for (auto& v : data) v *= scale;
}

}  // namespace cgsp::detail
