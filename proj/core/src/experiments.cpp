#include "cgsp/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <sstream>

#include "cgsp/error.hpp"
#include "cgsp/noise.hpp"

namespace cgsp {
namespace {

constexpr double kAutoMargin = 0.9;

const std::map<std::string, std::array<double, 3>>& fig2_cases() {
  static const std::map<std::string, std::array<double, 3>> cases{
      {"A", {0.7, 0.8, 0.6}}, {"B", {0.6, 0.8, 0.7}}, {"C", {0.6, 0.7, 0.8}}};
  return cases;
}

const std::map<std::string, std::array<double, 3>>& fig3_cases() {
  static const std::map<std::string, std::array<double, 3>> cases{
      {"A", {1.3, 1.5, 1.1}}, {"B", {1.1, 1.5, 1.3}}, {"C", {1.1, 1.3, 1.5}}};
  return cases;
}

ModelTriple power_law_triple(const std::array<double, 3>& g) {
  return {CorrelationModel::power_law(g[0]), CorrelationModel::power_law(g[1]), CorrelationModel::power_law(g[2])};
}

PowerLawResult run_power_law(int figure, int dim, const std::map<std::string, std::array<double, 3>>& table,
                             const std::vector<std::string>& names, const ReproduceOptions& opt,
                             double tolerance) {
  const auto size = experiment_size(figure, opt.scale);
  const FrequencyGrid grid(dim, size.side);
  PowerLawResult result;
  result.dim = dim;
  result.side = size.side;
  result.realizations = size.realizations;
  result.tolerance = tolerance;
  result.range = default_fit_range(grid);

  for (std::size_t ci = 0; ci < names.size(); ++ci) {
    const auto it = table.find(names[ci]);
    if (it == table.end()) throw InvalidArgument("unknown case '" + names[ci] + "'");
    auto models = power_law_triple(it->second);
    const double cross = auto_cross_amplitude(models, grid, SpectrumPath::fft, kAutoMargin);
    models.xy.amplitude = cross;
    auto pipe = build_pipeline(models, grid, SpectrumPath::fft);

    const std::uint64_t seed = opt.shared_noise ? opt.seed : child_seed(opt.seed, 1000 + ci);
    Ensemble ensemble({grid, seed, size.realizations}, std::move(pipe.coefficients));
    CorrelationAccumulator acc(grid, result.range.n_max + 1);
    ensemble.for_each(
        [&](std::size_t, RealizationPair&& p) {
          result.max_realness = std::max(result.max_realness, p.realness_residual);
          acc.add(p);
        },
        opt.workers);
    PowerLawCase c{.name = names[ci], .targets = it->second, .cross_amplitude = cross, .estimate = acc.result()};

    c.pass = true;
    const Which which[3] = {Which::xx, Which::yy, Which::xy};
    for (int w = 0; w < 3; ++w) {
      try {
        c.fits[w] = fit_power_law_exponent(c.estimate, which[w], result.range);
      } catch (const FitError&) {
        c.fits[w].gamma = std::numeric_limits<double>::quiet_NaN();
        c.fits[w].range = result.range;
      }
      c.scatter[w] = exponent_scatter(c.estimate, which[w], result.range);
      if (!(std::abs(c.fits[w].gamma - c.targets[w]) <= tolerance)) c.pass = false;
    }
    result.cases.push_back(std::move(c));
  }
  return result;
}

}  // namespace

Pipeline build_pipeline(const ModelTriple& models, const FrequencyGrid& grid, SpectrumPath path) {
  Pipeline p{radial_spectra(models, grid, path), CoefficientSet::zeros(grid)};
  const auto report = validate_feasibility(p.triple);
  if (!report.feasible) {
    std::ostringstream msg;
    msg << "target triple is infeasible: max coherence " << report.max_coherence << " > 1 at "
        << report.violating_bins.size() << " bin(s), first:";
    for (std::size_t i = 0; i < std::min<std::size_t>(5, report.violating_bins.size()); ++i) {
      msg << ' ' << report.violating_bins[i];
    }
    throw InfeasibleTarget(msg.str());
  }
  p.coefficients = coefficients_from_spectra(p.triple);
  const auto residual = verify_coefficients(p.coefficients, p.triple);
  if (!residual.passed) {
    std::ostringstream msg;
    msg << "coefficient identities violated: residual " << residual.max_residual << " at bin "
        << residual.worst_bin;
    throw NumericalError(msg.str());
  }
  return p;
}

double auto_cross_amplitude(const ModelTriple& models, const FrequencyGrid& grid, SpectrumPath path,
                            double margin) {
  const auto t = radial_spectra(models, grid, path);
  const double s = max_cross_scale(t);
  if (!std::isfinite(s)) return models.xy.amplitude;
  return margin * s * models.xy.amplitude;
}

ExperimentSize experiment_size(int figure, Scale scale) {
  switch (figure) {
    case 1: return {1024, 1000};
    case 2: return scale == Scale::desk ? ExperimentSize{1u << 18, 30} : ExperimentSize{1u << 21, 100};
    case 3: return scale == Scale::desk ? ExperimentSize{512, 20} : ExperimentSize{4096, 100};
    default: break;
  }
  throw InvalidArgument("unknown figure " + std::to_string(figure));
}

std::vector<std::string> fig1_couplings() { return {"gaussian", "exponential", "damped-harmonic"}; }

ModelTriple fig1_models(const std::string& coupling) {
  ModelTriple m{CorrelationModel::white(), CorrelationModel::white(), CorrelationModel::white()};
  if (coupling == "gaussian") {
    m.xy = CorrelationModel::gaussian(10.0);
  } else if (coupling == "exponential") {
    m.xy = CorrelationModel::exponential(0.1);
  } else if (coupling == "damped-harmonic") {
    m.xy = CorrelationModel::damped_harmonic(0.05, 0.25);
  } else {
    throw InvalidArgument("unknown coupling '" + coupling + "'");
  }
  return m;
}

bool Fig1Result::pass() const {
  return !panels.empty() && std::all_of(panels.begin(), panels.end(), [](const auto& p) { return p.pass; });
}

bool PowerLawResult::pass() const {
  return !cases.empty() && std::all_of(cases.begin(), cases.end(), [](const auto& c) { return c.pass; });
}

Fig1Result run_fig1(const ReproduceOptions& opt) {
  const auto size = experiment_size(1, opt.scale);
  const FrequencyGrid grid(1, size.side);
  Fig1Result result;
  result.side = size.side;
  result.realizations = size.realizations;

  const auto names = fig1_couplings();
  for (std::size_t pi = 0; pi < names.size(); ++pi) {
    auto models = fig1_models(names[pi]);
    models.xy.amplitude = auto_cross_amplitude(models, grid, SpectrumPath::fft, kAutoMargin);
    auto pipe = build_pipeline(models, grid);

    const std::uint64_t seed = opt.shared_noise ? opt.seed : child_seed(opt.seed, pi);
    Ensemble ensemble({grid, seed, size.realizations}, std::move(pipe.coefficients));
    CorrelationAccumulator acc(grid);
    Fig1Panel panel;
    panel.name = names[pi];
    panel.cross = models.xy;
    ensemble.for_each(
        [&](std::size_t k, RealizationPair&& p) {
          result.max_realness = std::max(result.max_realness, p.realness_residual);
          if (k == 0) panel.trajectory = cumulate(p);
          acc.add(p);
        },
        opt.workers);
    const auto est = acc.result();

    const long L = static_cast<long>(size.side);
    double ss = 0.0;
    for (long n = -result.max_lag; n <= result.max_lag; ++n) {
      const auto idx = static_cast<std::size_t>((n + L) % L);
      panel.lags.push_back(n);
      panel.measured.push_back(est.cxy[idx]);
      panel.stderrs.push_back(est.se_xy[idx]);
      panel.target.push_back(models.xy.evaluate(static_cast<double>(std::labs(n))));
      const double d = (panel.measured.back() - panel.target.back()) / models.xy.amplitude;
      ss += d * d;
    }
    panel.rms = std::sqrt(ss / static_cast<double>(panel.lags.size()));
    panel.pass = panel.rms < result.tolerance;
    result.panels.push_back(std::move(panel));
  }
  return result;
}

PowerLawResult run_fig2(const ReproduceOptions& opt, const std::vector<std::string>& cases) {
  return run_power_law(2, 1, fig2_cases(), cases, opt, 0.05);
}

PowerLawResult run_fig3(const ReproduceOptions& opt, const std::vector<std::string>& cases) {
  return run_power_law(3, 2, fig3_cases(), cases, opt, 0.1);
}

SurfacePair fig3_surfaces(std::uint64_t seed) {
  const FrequencyGrid grid(2, 256);
  auto models = power_law_triple({0.7, 1.5, 1.0});
  models.xy.amplitude = auto_cross_amplitude(models, grid, SpectrumPath::fft, kAutoMargin);
  const auto pipe = build_pipeline(models, grid);
  return self_affine_surface(synthesize_field_pair(pipe.coefficients, child_seed(seed, 0)));
}

}  // namespace cgsp
