#pragma once

// Brute-force ground truth for small grids.  Nothing here touches the FFT
// pipeline: covariances are built from the model functions directly and
// propagated through explicit dense DFT matrices.

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "cgsp/correlation.hpp"
#include "cgsp/coupling.hpp"

namespace cgsp::oracle {

inline constexpr std::size_t kMaxOracleLength = 64;
inline constexpr double kJitter = 1e-10;

/// Row-major 2L x 2L matrix [[Sxx, Sxy], [Sxy^T, Syy]] for x_0..x_{L-1},
/// y_0..y_{L-1}.
struct JointCovariance {
  std::size_t length = 0;
  std::vector<double> values;

  std::size_t dim() const noexcept { return 2 * length; }
  double operator()(std::size_t i, std::size_t j) const { return values[i * dim() + j]; }
  double& operator()(std::size_t i, std::size_t j) { return values[i * dim() + j]; }

  double smallest_eigenvalue() const;
  double max_abs_difference(const JointCovariance& other) const;
};

/// Block-circulant covariance of the targets: Sxx[i][j] = C_xx((j-i) mod L)
/// with even mirroring, Sxy[i][j] = C_xy((j-i) mod L).
JointCovariance build_joint_covariance(const ModelTriple& models, std::size_t length);

/// Exact covariance produced by mixing unit white noise with the
/// coefficients, using dense DFT matrices.
JointCovariance exact_generator_covariance(const CoefficientSet& cs);

struct SamplePair {
  std::vector<double> x;
  std::vector<double> y;
};

/// Exact-law samples via a symmetric eigendecomposition.  Eigenvalues down
/// to -1e-10 * max(1, largest) are treated as zero; anything more negative
/// throws InfeasibleTarget.
std::vector<SamplePair> oracle_sample(const JointCovariance& cov, std::size_t count, std::uint64_t seed);

/// K_nu(x) = int_0^inf exp(-x cosh t) cosh(nu t) dt by adaptive
/// Gauss-Kronrod (7/15) quadrature, relative accuracy ~1e-10.
/// Requires x > 0 and |nu| < 5.
double bessel_k_numeric(double nu, double x);

}  // namespace cgsp::oracle
