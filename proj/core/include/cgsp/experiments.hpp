#pragma once

// Desk- and full-scale reproductions of the three reference experiments:
// coupled white noises with Gaussian / exponential / damped-harmonic
// cross-correlation, coupled power-law sequences, and coupled power-law
// fields.  Shared by `cgsp reproduce` and the acceptance suite.

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "cgsp/coupling.hpp"
#include "cgsp/estimation.hpp"
#include "cgsp/field.hpp"
#include "cgsp/synth.hpp"

namespace cgsp {

struct Pipeline {
  SpectralTriple triple;
  CoefficientSet coefficients;
};

/// Spectra, feasibility gate and coefficients.  Throws InfeasibleTarget
/// listing the first violating bins.
Pipeline build_pipeline(const ModelTriple& models, const FrequencyGrid& grid,
                        SpectrumPath path = SpectrumPath::fft);

/// Cross amplitude equal to `margin` times the largest feasible one for the
/// given auto targets.  Returns the current amplitude when the cross target
/// is identically zero.
double auto_cross_amplitude(const ModelTriple& models, const FrequencyGrid& grid, SpectrumPath path,
                            double margin = 0.9);

enum class Scale { desk, full };

struct ReproduceOptions {
  Scale scale = Scale::desk;
  std::uint64_t seed = 42;
  unsigned workers = 1;
  bool shared_noise = true;  // same driving noise for every panel / case
};

struct Fig1Panel {
  std::string name;
  CorrelationModel cross;  // amplitude already scaled
  std::vector<long> lags;  // -max_lag..max_lag
  std::vector<double> measured, stderrs, target;
  double rms = 0.0;  // of (measured - target) / amplitude, i.e. on the unit-peak curve
  TrajectoryPair trajectory;  // realization 0
  bool pass = false;
};

struct Fig1Result {
  std::size_t side = 0;
  std::size_t realizations = 0;
  long max_lag = 100;
  double tolerance = 0.05;
  std::vector<Fig1Panel> panels;
  double max_realness = 0.0;
  bool pass() const;
};

struct PowerLawCase {
  std::string name;
  std::array<double, 3> targets{};  // gamma_xx, gamma_yy, gamma_xy
  double cross_amplitude = 1.0;
  std::array<ExponentFit, 3> fits{};
  std::array<double, 3> scatter{};
  CorrelationEstimate estimate;
  bool pass = false;
};

struct PowerLawResult {
  int dim = 1;
  std::size_t side = 0;
  std::size_t realizations = 0;
  double tolerance = 0.0;
  FitRange range;
  std::vector<PowerLawCase> cases;
  double max_realness = 0.0;
  bool pass() const;
};

ModelTriple fig1_models(const std::string& coupling);
std::vector<std::string> fig1_couplings();

Fig1Result run_fig1(const ReproduceOptions& opt);

/// Cases A (0.7, 0.8, 0.6), B (0.6, 0.8, 0.7), C (0.6, 0.7, 0.8); tolerance 0.05.
PowerLawResult run_fig2(const ReproduceOptions& opt, const std::vector<std::string>& cases = {"A", "B", "C"});

/// Cases A (1.3, 1.5, 1.1), B (1.1, 1.5, 1.3), C (1.1, 1.3, 1.5); tolerance 0.1.
PowerLawResult run_fig3(const ReproduceOptions& opt, const std::vector<std::string>& cases = {"A", "B", "C"});

/// 256 x 256 surfaces with gamma = (0.7, 1.5, 1.0).
SurfacePair fig3_surfaces(std::uint64_t seed);

struct ExperimentSize {
  std::size_t side;
  std::size_t realizations;
};
ExperimentSize experiment_size(int figure, Scale scale);

}  // namespace cgsp
