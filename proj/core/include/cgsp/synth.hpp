#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "cgsp/coupling.hpp"

namespace cgsp {

/// Relative bound on the imaginary residue discarded after the inverse
/// transform: max|Im| <= 1e-9 * (1 + max|Re|).
inline constexpr double kRealnessTolerance = 1e-9;

/// One coupled realization on a grid (a sequence for d = 1, a field for d >= 2).
struct RealizationPair {
  FrequencyGrid grid;
  std::vector<double> x;
  std::vector<double> y;
  std::uint64_t seed_used = 0;
  double realness_residual = 0.0;  // relative, as defined above
};
using SequencePair = RealizationPair;
using FieldPair = RealizationPair;

struct TrajectoryPair {
  std::vector<double> x;
  std::vector<double> y;
};

struct GeneratorConfig {
  FrequencyGrid grid;
  std::uint64_t master_seed = 0;
  std::size_t n_realizations = 1;

  void validate() const;
};

/// Mixes the transforms of white_pair(seed) with the coefficients and
/// returns to real space.  Any grid dimension.
RealizationPair synthesize(const CoefficientSet& cs, std::uint64_t seed);

/// synthesize() restricted to d = 1, L >= 8.
SequencePair synthesize_pair(const CoefficientSet& cs, std::uint64_t seed);

/// Running sums X(t) = x_0 + ... + x_t.
TrajectoryPair cumulate(const SequencePair& sp);

/// Deterministic ensemble; realization k uses child_seed(master_seed, k) and
/// is independent of evaluation order and worker count.
class Ensemble {
 public:
  Ensemble(GeneratorConfig cfg, CoefficientSet cs);

  const GeneratorConfig& config() const noexcept { return cfg_; }
  const CoefficientSet& coefficients() const noexcept { return cs_; }

  RealizationPair realization(std::size_t k) const;

  /// Calls fn(k, pair) for k = 0..n-1 in increasing k.  Realizations are
  /// produced by up to `workers` threads; fn always runs on the caller's
  /// thread.
  void for_each(const std::function<void(std::size_t, RealizationPair&&)>& fn, unsigned workers = 1) const;

 private:
  GeneratorConfig cfg_;
  CoefficientSet cs_;
};

}  // namespace cgsp
