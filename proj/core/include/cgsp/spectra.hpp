#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "cgsp/correlation.hpp"
#include "cgsp/grid.hpp"

namespace cgsp {

using Complex = std::complex<double>;

/// Relative threshold below which negative autospectrum values are treated
/// as discretization noise and clipped to zero.
inline constexpr double kClipTolerance = 1e-8;
/// Relative slack admitted on |S_xy|^2 <= S_xx S_yy.
inline constexpr double kFeasibilityTolerance = 1e-10;
/// Absolute floor on |S_xy| (relative to the largest autospectrum value)
/// under which a cross bin counts as zero.
inline constexpr double kCrossZeroFloor = 1e-12;
/// Relative bound on the imaginary part of a transform declared even.
inline constexpr double kEvenImagTolerance = 1e-10;

struct ClipReport {
  std::size_t count = 0;
  double max_magnitude = 0.0;
};

struct SpectralTriple {
  FrequencyGrid grid;
  std::vector<double> sxx;
  std::vector<double> syy;
  std::vector<Complex> sxy;
  bool feasible = false;
  ClipReport clip;
};

struct FeasibilityReport {
  bool feasible = true;
  double max_coherence = 0.0;
  std::vector<std::size_t> violating_bins;
};

enum class SpectrumPath { fft, analytic };

/// Forward DFT S(q) = sum_n C(n) exp(-2 pi i q.n / L) of a lag array.
std::vector<Complex> spectrum_from_correlation(std::span<const double> lags, const FrequencyGrid& grid);

/// Real, non-negative autospectrum of an even lag array.  Imaginary parts
/// above tolerance and negative values beyond the clip tolerance throw
/// InfeasibleTarget; smaller negatives are zeroed and counted in `clip`.
std::vector<double> autospectrum_from_correlation(std::span<const double> lags, const FrequencyGrid& grid,
                                                  ClipReport& clip);

/// K_nu(x) provider used by the analytic path.
using BesselK = std::function<double(double nu, double x)>;
double std_bessel_k(double nu, double x);

/// Continuum transform of (1+r^2)^(-gamma/2) in d dimensions at |q| > 0:
/// 2 pi^(d/2) / Gamma(gamma/2) * (q/2)^beta * K_beta(q), beta = (gamma-d)/2.
double power_law_spectral_density(double gamma, int dim, double q, const BesselK& bessel_k = std_bessel_k);

/// Closed-form power-law spectrum on every bin of the grid.  The q = 0 bin
/// holds the lag sum of the sampled correlation since the density diverges
/// there for gamma < d.
std::vector<double> power_law_spectrum_analytic(double gamma, const FrequencyGrid& grid,
                                                const BesselK& bessel_k = std_bessel_k);

FeasibilityReport validate_feasibility(const SpectralTriple& t);

/// Spectra of the three targets on the grid.  The fft path samples and
/// transforms the correlations; the analytic path evaluates the closed form
/// (power-law and white models only).  For d >= 2 spectra are averaged over
/// bins with identical |q| so every quantity downstream is isotropic.
SpectralTriple radial_spectra(const ModelTriple& models, const FrequencyGrid& grid,
                              SpectrumPath path = SpectrumPath::fft);

/// Largest factor r such that scaling the cross target by r keeps the
/// triple feasible.  +infinity when the cross spectrum vanishes.
double max_cross_scale(const SpectralTriple& t);

/// Pointwise |S_xy| / sqrt(S_xx S_yy); throws InvalidArgument on a zero
/// autospectrum bin.
std::vector<double> coherence_profile(const SpectralTriple& t);

}  // namespace cgsp
