#include "cgsp/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <unordered_map>

#include "cgsp/error.hpp"
#include "fft.hpp"

namespace cgsp {
namespace {

double max_abs(std::span<const Complex> s) {
  double m = 0.0;
  for (const auto& v : s) m = std::max(m, std::abs(v));
  return m;
}

void enforce_hermitian(std::vector<Complex>& s, const FrequencyGrid& grid) {
  for (std::size_t k = 0; k < s.size(); ++k) {
    const std::size_t kn = grid.negated(k);
    if (kn == k) {
      s[k] = Complex(s[k].real(), 0.0);
    } else if (k < kn) {
      const Complex avg = 0.5 * (s[k] + std::conj(s[kn]));
      s[k] = avg;
      s[kn] = std::conj(avg);
    }
  }
}

// Replace every bin by the mean over bins with the same |q|.
template <typename T>
void isotropize(std::vector<T>& s, const FrequencyGrid& grid) {
  std::unordered_map<std::uint64_t, std::pair<T, double>> shells;
  for (std::size_t k = 0; k < s.size(); ++k) {
    auto& [sum, n] = shells[grid.wave_index_norm2(k)];
    sum += s[k];
    n += 1.0;
  }
  for (std::size_t k = 0; k < s.size(); ++k) {
    const auto& [sum, n] = shells.at(grid.wave_index_norm2(k));
    s[k] = sum / n;
  }
}

std::vector<double> analytic_auto(const CorrelationModel& m, const FrequencyGrid& grid) {
  m.validate();
  if (m.family == Family::white) return std::vector<double>(grid.size(), m.amplitude);
  if (m.family != Family::power_law) {
    throw InvalidArgument("the analytic spectrum path supports only power-law and white models (got " +
                          std::string(to_string(m.family)) + "); use the fft path");
  }
  auto s = power_law_spectrum_analytic(m.param("gamma"), grid);
  for (auto& v : s) v *= m.amplitude;
  return s;
}

}  // namespace

std::vector<Complex> spectrum_from_correlation(std::span<const double> lags, const FrequencyGrid& grid) {
  if (lags.size() != grid.size()) {
    throw InvalidArgument("lag array has " + std::to_string(lags.size()) + " entries; grid needs " +
                          std::to_string(grid.size()));
  }
  std::vector<Complex> s(lags.begin(), lags.end());
  detail::Fft::for_grid(grid).forward(s);
  return s;
}

std::vector<double> autospectrum_from_correlation(std::span<const double> lags, const FrequencyGrid& grid,
                                                  ClipReport& clip) {
  const auto s = spectrum_from_correlation(lags, grid);
  const double scale = max_abs(s);
  std::vector<double> out(s.size());
  double max_real = 0.0;
  for (std::size_t k = 0; k < s.size(); ++k) {
    if (std::abs(s[k].imag()) > kEvenImagTolerance * scale) {
      std::ostringstream msg;
      msg << "autocorrelation is not even: spectrum bin " << k << " has imaginary part " << s[k].imag();
      throw InfeasibleTarget(msg.str());
    }
    // Same arithmetic as enforce_hermitian, so equal targets give bitwise equal spectra.
    out[k] = 0.5 * (s[k].real() + s[grid.negated(k)].real());
    max_real = std::max(max_real, out[k]);
  }
  for (std::size_t k = 0; k < out.size(); ++k) {
    if (out[k] >= 0.0) continue;
    if (-out[k] > kClipTolerance * max_real) {
      std::ostringstream msg;
      msg << "autospectrum is negative at bin " << k << " (" << out[k] << ", limit "
          << -kClipTolerance * max_real << "); the target correlation is not positive definite";
      throw InfeasibleTarget(msg.str());
    }
    ++clip.count;
    clip.max_magnitude = std::max(clip.max_magnitude, -out[k]);
    out[k] = 0.0;
  }
  return out;
}

double std_bessel_k(double nu, double x) { return std::cyl_bessel_k(std::abs(nu), x); }

double power_law_spectral_density(double gamma, int dim, double q, const BesselK& bessel_k) {
  if (!(q > 0.0)) throw InvalidArgument("power-law spectral density needs q > 0");
  const double half_gamma = 0.5 * gamma;
  if (half_gamma <= 0.0 && half_gamma == std::floor(half_gamma)) {
    throw InvalidArgument("Gamma(gamma/2) has a pole for gamma = " + std::to_string(gamma) +
                          "; use the fft spectrum path");
  }
  const double beta = 0.5 * (gamma - dim);
  const double prefactor = 2.0 * std::pow(std::numbers::pi, 0.5 * dim) / std::tgamma(half_gamma);
  return prefactor * std::pow(0.5 * q, beta) * bessel_k(beta, q);
}

std::vector<double> power_law_spectrum_analytic(double gamma, const FrequencyGrid& grid,
                                                const BesselK& bessel_k) {
  const auto model = CorrelationModel::power_law(gamma);
  model.validate();
  std::vector<double> out(grid.size());
  std::unordered_map<std::uint64_t, double> by_norm;
  for (std::size_t k = 0; k < out.size(); ++k) {
    const auto n2 = grid.wave_index_norm2(k);
    if (n2 == 0) {
      double lag_sum = 0.0;
      for (double c : sample_correlation(model, grid)) lag_sum += c;
      out[k] = lag_sum;
      continue;
    }
    auto it = by_norm.find(n2);
    if (it == by_norm.end()) {
      it = by_norm.emplace(n2, power_law_spectral_density(gamma, grid.dim(), grid.radial_wavenumber(k), bessel_k))
               .first;
    }
    out[k] = it->second;
  }
  return out;
}

FeasibilityReport validate_feasibility(const SpectralTriple& t) {
  FeasibilityReport r;
  double scale = 0.0;
  for (double v : t.sxx) scale = std::max(scale, v);
  for (double v : t.syy) scale = std::max(scale, v);
  const double floor = kCrossZeroFloor * scale;

  for (std::size_t k = 0; k < t.sxy.size(); ++k) {
    const double p = t.sxx[k] * t.syy[k];
    const double c = std::abs(t.sxy[k]);
    if (c <= floor) {
      continue;
    }
    if (p <= 0.0) {
      r.max_coherence = std::numeric_limits<double>::infinity();
      r.violating_bins.push_back(k);
      continue;
    }
    r.max_coherence = std::max(r.max_coherence, c / std::sqrt(p));
    // Rounding of the transforms is absolute, so the slack is too.
    if (c > std::sqrt(p) * (1.0 + kFeasibilityTolerance) + floor) r.violating_bins.push_back(k);
  }
  r.feasible = r.violating_bins.empty();
  return r;
}

SpectralTriple radial_spectra(const ModelTriple& models, const FrequencyGrid& grid, SpectrumPath path) {
  SpectralTriple t{grid, {}, {}, {}, false, {}};
  if (path == SpectrumPath::fft) {
    t.sxx = autospectrum_from_correlation(sample_correlation(models.xx, grid), grid, t.clip);
    t.syy = autospectrum_from_correlation(sample_correlation(models.yy, grid), grid, t.clip);
    const auto cross = sample_correlation(models.xy, grid);
    t.sxy = spectrum_from_correlation(cross, grid);
    enforce_hermitian(t.sxy, grid);
    bool even = true;
    for (std::size_t k = 0; k < cross.size() && even; ++k) even = cross[k] == cross[grid.negated(k)];
    if (even) {
      for (auto& v : t.sxy) v = v.real();
    }
  } else {
    t.sxx = analytic_auto(models.xx, grid);
    t.syy = analytic_auto(models.yy, grid);
    const auto cross = analytic_auto(models.xy, grid);
    t.sxy.assign(cross.begin(), cross.end());
  }
  if (grid.dim() >= 2) {
    isotropize(t.sxx, grid);
    isotropize(t.syy, grid);
    isotropize(t.sxy, grid);
    enforce_hermitian(t.sxy, grid);
  }
  t.feasible = validate_feasibility(t).feasible;
  return t;
}

double max_cross_scale(const SpectralTriple& t) {
  double scale = 0.0;
  for (double v : t.sxx) scale = std::max(scale, v);
  for (double v : t.syy) scale = std::max(scale, v);
  const double floor = kCrossZeroFloor * scale;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < t.sxy.size(); ++k) {
    const double c = std::abs(t.sxy[k]);
    if (c <= floor) continue;
    best = std::min(best, std::sqrt(std::max(0.0, t.sxx[k] * t.syy[k])) / c);
  }
  return best;
}

std::vector<double> coherence_profile(const SpectralTriple& t) {
  std::vector<double> g(t.sxy.size());
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (!(t.sxx[k] > 0.0) || !(t.syy[k] > 0.0)) {
      throw InvalidArgument("coherence undefined: zero autospectrum at bin " + std::to_string(k));
    }
    g[k] = std::abs(t.sxy[k]) / std::sqrt(t.sxx[k] * t.syy[k]);
  }
  return g;
}

}  // namespace cgsp
