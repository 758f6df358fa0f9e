#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cgsp/spectra.hpp"
#include "cgsp/synth.hpp"

namespace cgsp {

enum class Which { xx, yy, xy };

/// Ensemble-averaged circular correlations.
///
/// For d = 1 entry n is lag n in [0, L).  For fields entry n is the shell
/// of lag vectors whose periodic distance rounds to n, and `radius[n]` is
/// the mean distance over that shell (the abscissa used by fits).
struct CorrelationEstimate {
  FrequencyGrid grid;
  std::vector<std::size_t> lags;
  std::vector<double> radius;
  std::vector<double> cxx, cyy, cxy;
  std::vector<double> se_xx, se_yy, se_xy;  // NaN for a single realization
  std::size_t n_realizations = 0;

  /// Ensemble mean of the full circular correlation arrays on the grid.
  std::vector<double> circular_xx, circular_yy, circular_xy;

  /// Per-realization reduced values at entries [0, kept_lags) (optional).
  std::size_t kept_lags = 0;
  std::vector<std::vector<double>> each_xx, each_yy, each_xy;

  const std::vector<double>& values(Which w) const;
  const std::vector<double>& stderrs(Which w) const;
};

/// Per-realization circular estimator
///   C_xy(n) = (1/L^d) sum_i x_i y_{i+n mod L}
/// computed by FFT and reduced in arrival order (Welford).
class CorrelationAccumulator {
 public:
  explicit CorrelationAccumulator(const FrequencyGrid& grid, std::size_t keep_lags = 0);

  void add(const RealizationPair& pair);
  std::size_t count() const noexcept { return n_; }
  CorrelationEstimate result() const;

 private:
  FrequencyGrid grid_;
  std::size_t keep_lags_;
  std::size_t n_ = 0;
  std::vector<std::size_t> shell_of_;
  std::vector<double> shell_count_;
  std::vector<double> shell_radius_;
  std::vector<double> mean_[3], m2_[3], circ_[3];
  std::vector<std::vector<double>> each_[3];
};

CorrelationEstimate estimate_correlations(std::span<const RealizationPair> pairs);

/// Raw circular cross-correlation (1/L^d) sum_i a_i b_{i+n} of one pair of
/// arrays, indexed by flat lag.
std::vector<double> circular_correlation(std::span<const double> a, std::span<const double> b,
                                         const FrequencyGrid& grid);

struct FitRange {
  std::size_t n_min = 4;
  std::size_t n_max = 64;
};

struct ExponentFit {
  double gamma = 0.0;
  double uncertainty = 0.0;  // OLS standard error of the slope
  FitRange range;
  double goodness = 0.0;     // RMS residual of the log-log fit
  std::size_t points = 0;
};

/// [4, min(max(L/4096, 16), L/8)] for sequences, [4, min(12, L/8)] for
/// fields.
FitRange default_fit_range(const FrequencyGrid& grid);

/// Unweighted least squares of log C against log r over the range;
/// gamma = -slope.  Throws FitError naming the first non-positive lag.
ExponentFit fit_power_law_exponent(const CorrelationEstimate& est, Which which, FitRange range);
ExponentFit fit_power_law_exponent(std::span<const double> radius, std::span<const double> values,
                                   FitRange range, std::size_t side);

/// Standard error of the exponent across per-realization fits.  Needs
/// kept_lags > range.n_max and >= 2 realizations; NaN when any single
/// realization cannot be fitted.
double exponent_scatter(const CorrelationEstimate& est, Which which, FitRange range);

/// Ensemble spectra recovered from the circular estimates (averaged
/// periodograms).  No feasibility information.
SpectralTriple estimated_spectra(const CorrelationEstimate& est);

std::vector<double> coherence_profile(const CorrelationEstimate& est);

}  // namespace cgsp
