#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cgsp/grid.hpp"

namespace cgsp {

enum class Family { white, gaussian, exponential, damped_harmonic, power_law, tabulated };

std::string_view to_string(Family f) noexcept;
/// Accepts the CLI spellings ("power-law", "damped-harmonic", ...) and the
/// underscore forms.
std::optional<Family> family_from_string(std::string_view name) noexcept;

/// Target correlation C(l) as a function of (possibly fractional) lag.
///
/// Parameters by family:
///   gaussian         sigma > 0            exp(-l^2 / (2 sigma^2))
///   exponential      lambda > 0           exp(-lambda |l|)
///   damped_harmonic  lambda > 0, omega>=0 exp(-lambda |l|) cos(omega l)
///   power_law        gamma in (0, 2)      (1 + l^2)^(-gamma/2)
///   white                                 delta_{l,0}
///   tabulated        table of lags 0..L/2 (mirrored) or 0..L-1 (circular)
/// Every family is scaled by `amplitude`.
struct CorrelationModel {
  Family family = Family::white;
  std::map<std::string, double> params;
  std::vector<double> table;
  double amplitude = 1.0;

  static CorrelationModel white(double amplitude = 1.0);
  static CorrelationModel gaussian(double sigma, double amplitude = 1.0);
  static CorrelationModel exponential(double lambda, double amplitude = 1.0);
  static CorrelationModel damped_harmonic(double lambda, double omega, double amplitude = 1.0);
  static CorrelationModel power_law(double gamma, double amplitude = 1.0);
  static CorrelationModel tabulated(std::vector<double> values, double amplitude = 1.0);

  /// Throws InvalidArgument on missing or non-finite parameters.
  void validate() const;

  /// C(l) for a non-negative distance.  Not defined for tabulated models.
  double evaluate(double lag) const;

  double param(const std::string& name) const;

  CorrelationModel scaled(double factor) const;
};

/// The three targets C_xx, C_yy, C_xy that define a coupled pair.
struct ModelTriple {
  CorrelationModel xx;
  CorrelationModel yy;
  CorrelationModel xy;
};

/// C sampled at every lag vector of the grid.  For d = 1 lags n > L/2 take
/// the value at L - n; for fields the lag distance is the per-axis minimum
/// image Euclidean distance.  Full-length tabulated tables are used as given
/// (this is how uneven cross-correlations are expressed).
std::vector<double> sample_correlation(const CorrelationModel& model, const FrequencyGrid& grid);

}  // namespace cgsp
