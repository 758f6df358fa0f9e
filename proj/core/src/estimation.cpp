#include "cgsp/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "cgsp/error.hpp"
#include "fft.hpp"

namespace cgsp {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Circular auto- and cross-correlations of one realization.
struct Circular {
  std::vector<double> xx, yy, xy;
};

Circular circular_all(const RealizationPair& p) {
  const auto& grid = p.grid;
  const std::size_t n = grid.size();
  const auto& fft = detail::Fft::for_grid(grid);
  std::vector<Complex> X(p.x.begin(), p.x.end());
  std::vector<Complex> Y(p.y.begin(), p.y.end());
  fft.forward(X);
  fft.forward(Y);

  // |X|^2 and |Y|^2 are Hermitian, so both autocorrelations come out of one
  // inverse transform as its real and imaginary parts.
  std::vector<Complex> autos(n), cross(n);
  for (std::size_t k = 0; k < n; ++k) {
    autos[k] = Complex(std::norm(X[k]), std::norm(Y[k]));
    cross[k] = std::conj(X[k]) * Y[k];
  }
  fft.inverse(autos);
  fft.inverse(cross);

  const double inv = 1.0 / static_cast<double>(n);
  Circular c{std::vector<double>(n), std::vector<double>(n), std::vector<double>(n)};
  for (std::size_t k = 0; k < n; ++k) {
    c.xx[k] = autos[k].real() * inv;
    c.yy[k] = autos[k].imag() * inv;
    c.xy[k] = cross[k].real() * inv;
  }
  return c;
}

}  // namespace

const std::vector<double>& CorrelationEstimate::values(Which w) const {
  switch (w) {
    case Which::xx: return cxx;
    case Which::yy: return cyy;
    case Which::xy: break;
  }
  return cxy;
}

const std::vector<double>& CorrelationEstimate::stderrs(Which w) const {
  switch (w) {
    case Which::xx: return se_xx;
    case Which::yy: return se_yy;
    case Which::xy: break;
  }
  return se_xy;
}

CorrelationAccumulator::CorrelationAccumulator(const FrequencyGrid& grid, std::size_t keep_lags)
    : grid_(grid), keep_lags_(keep_lags), shell_of_(grid.size()) {
  std::size_t shells = 0;
  if (grid.dim() == 1) {
    shells = grid.size();
    for (std::size_t k = 0; k < grid.size(); ++k) shell_of_[k] = k;
    shell_count_.assign(shells, 1.0);
    shell_radius_.resize(shells);
    for (std::size_t k = 0; k < shells; ++k) shell_radius_[k] = static_cast<double>(k);
  } else {
    for (std::size_t k = 0; k < grid.size(); ++k) {
      shell_of_[k] = static_cast<std::size_t>(std::lround(grid.periodic_distance(k)));
      shells = std::max(shells, shell_of_[k] + 1);
    }
    shell_count_.assign(shells, 0.0);
    shell_radius_.assign(shells, 0.0);
    for (std::size_t k = 0; k < grid.size(); ++k) {
      shell_count_[shell_of_[k]] += 1.0;
      shell_radius_[shell_of_[k]] += grid.periodic_distance(k);
    }
    for (std::size_t s = 0; s < shells; ++s) {
      if (shell_count_[s] > 0.0) shell_radius_[s] /= shell_count_[s];
    }
  }
  keep_lags_ = std::min(keep_lags_, shells);
  for (int w = 0; w < 3; ++w) {
    mean_[w].assign(shells, 0.0);
    m2_[w].assign(shells, 0.0);
    circ_[w].assign(grid.size(), 0.0);
  }
}

void CorrelationAccumulator::add(const RealizationPair& pair) {
  if (!(pair.grid == grid_) || pair.x.size() != grid_.size() || pair.y.size() != grid_.size()) {
    throw InvalidArgument("realization shape does not match the accumulator grid");
  }
  const auto c = circular_all(pair);
  const std::vector<double>* raw[3] = {&c.xx, &c.yy, &c.xy};
  ++n_;
  const double n = static_cast<double>(n_);
  for (int w = 0; w < 3; ++w) {
    std::vector<double> reduced(mean_[w].size(), 0.0);
    for (std::size_t k = 0; k < grid_.size(); ++k) {
      reduced[shell_of_[k]] += (*raw[w])[k];
      circ_[w][k] += (*raw[w])[k];
    }
    for (std::size_t s = 0; s < reduced.size(); ++s) {
      if (shell_count_[s] > 0.0) reduced[s] /= shell_count_[s];
      const double delta = reduced[s] - mean_[w][s];
      mean_[w][s] += delta / n;
      m2_[w][s] += delta * (reduced[s] - mean_[w][s]);
    }
    if (keep_lags_ > 0) each_[w].emplace_back(reduced.begin(), reduced.begin() + keep_lags_);
  }
}

CorrelationEstimate CorrelationAccumulator::result() const {
  if (n_ == 0) throw InvalidArgument("no realizations to estimate from");
  CorrelationEstimate e{grid_, {}, shell_radius_, mean_[0], mean_[1], mean_[2], {}, {}, {}, n_,
                        {}, {}, {}, keep_lags_, each_[0], each_[1], each_[2]};
  e.lags.resize(mean_[0].size());
  for (std::size_t s = 0; s < e.lags.size(); ++s) e.lags[s] = s;

  std::vector<double>* se[3] = {&e.se_xx, &e.se_yy, &e.se_xy};
  for (int w = 0; w < 3; ++w) {
    se[w]->assign(mean_[w].size(), kNaN);
    if (n_ < 2) continue;
    const double n = static_cast<double>(n_);
    for (std::size_t s = 0; s < mean_[w].size(); ++s) {
      (*se[w])[s] = std::sqrt(m2_[w][s] / (n - 1.0) / n);
    }
  }
  std::vector<double>* circ[3] = {&e.circular_xx, &e.circular_yy, &e.circular_xy};
  for (int w = 0; w < 3; ++w) {
    circ[w]->resize(grid_.size());
    for (std::size_t k = 0; k < grid_.size(); ++k) (*circ[w])[k] = circ_[w][k] / static_cast<double>(n_);
  }
  return e;
}

CorrelationEstimate estimate_correlations(std::span<const RealizationPair> pairs) {
  if (pairs.empty()) throw InvalidArgument("estimate_correlations needs at least one realization");
  CorrelationAccumulator acc(pairs.front().grid);
  for (const auto& p : pairs) acc.add(p);
  return acc.result();
}

std::vector<double> circular_correlation(std::span<const double> a, std::span<const double> b,
                                         const FrequencyGrid& grid) {
  if (a.size() != grid.size() || b.size() != grid.size()) {
    throw InvalidArgument("circular_correlation: array length does not match grid");
  }
  RealizationPair p{grid, {a.begin(), a.end()}, {b.begin(), b.end()}, 0, 0.0};
  return circular_all(p).xy;
}

FitRange default_fit_range(const FrequencyGrid& grid) {
  const std::size_t L = grid.side();
  const std::size_t upper = grid.dim() == 1 ? std::max<std::size_t>(L / 4096, 16) : 12;
  return {4, std::min(upper, L / 8)};
}

ExponentFit fit_power_law_exponent(std::span<const double> radius, std::span<const double> values,
                                   FitRange range, std::size_t side) {
  if (range.n_min < 1) throw InvalidArgument("fit range must start at lag >= 1");
  if (range.n_max > side / 8) {
    throw InvalidArgument("fit range end " + std::to_string(range.n_max) + " exceeds L/8 = " +
                          std::to_string(side / 8));
  }
  if (range.n_max < range.n_min + 2) throw InvalidArgument("fit range needs at least three lags");
  if (range.n_max >= values.size() || range.n_max >= radius.size()) {
    throw InvalidArgument("fit range extends past the available lags");
  }

  const std::size_t m = range.n_max - range.n_min + 1;
  std::vector<double> lx(m), ly(m);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t n = range.n_min + i;
    if (!(values[n] > 0.0)) {
      std::ostringstream msg;
      msg << "correlation at lag " << n << " is " << values[n]
          << " (not positive); the ensemble is too small or the fit range too long";
      throw FitError(msg.str(), n);
    }
    lx[i] = std::log(radius[n]);
    ly[i] = std::log(values[n]);
  }
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= static_cast<double>(m);
  my /= static_cast<double>(m);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  double ssr = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double r = ly[i] - (intercept + slope * lx[i]);
    ssr += r * r;
  }
  ExponentFit fit;
  fit.gamma = -slope;
  fit.uncertainty = std::sqrt(ssr / static_cast<double>(m - 2) / sxx);
  fit.range = range;
  fit.goodness = std::sqrt(ssr / static_cast<double>(m));
  fit.points = m;
  return fit;
}

ExponentFit fit_power_law_exponent(const CorrelationEstimate& est, Which which, FitRange range) {
  return fit_power_law_exponent(est.radius, est.values(which), range, est.grid.side());
}

double exponent_scatter(const CorrelationEstimate& est, Which which, FitRange range) {
  if (est.n_realizations < 2 || est.kept_lags <= range.n_max) return kNaN;
  const auto& each = which == Which::xx ? est.each_xx : which == Which::yy ? est.each_yy : est.each_xy;
  double mean = 0.0, m2 = 0.0;
  std::size_t n = 0;
  for (const auto& values : each) {
    double g;
    try {
      g = fit_power_law_exponent(est.radius, values, range, est.grid.side()).gamma;
    } catch (const FitError&) {
      return kNaN;
    }
    ++n;
    const double delta = g - mean;
    mean += delta / static_cast<double>(n);
    m2 += delta * (g - mean);
  }
  return std::sqrt(m2 / static_cast<double>(n - 1) / static_cast<double>(n));
}

SpectralTriple estimated_spectra(const CorrelationEstimate& est) {
  if (est.circular_xx.size() != est.grid.size()) throw InvalidArgument("estimate has no circular arrays");
  SpectralTriple t{est.grid, {}, {}, {}, false, {}};
  const auto sx = spectrum_from_correlation(est.circular_xx, est.grid);
  const auto sy = spectrum_from_correlation(est.circular_yy, est.grid);
  t.sxy = spectrum_from_correlation(est.circular_xy, est.grid);
  t.sxx.resize(sx.size());
  t.syy.resize(sy.size());
  for (std::size_t k = 0; k < sx.size(); ++k) {
    t.sxx[k] = sx[k].real();
    t.syy[k] = sy[k].real();
  }
  t.feasible = validate_feasibility(t).feasible;
  return t;
}

std::vector<double> coherence_profile(const CorrelationEstimate& est) {
  return coherence_profile(estimated_spectra(est));
}

}  // namespace cgsp
