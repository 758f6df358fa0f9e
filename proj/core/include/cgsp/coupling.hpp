#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "cgsp/spectra.hpp"

namespace cgsp {

/// Fourier-space mixing x_q = a u_q + b v_q, y_q = c u_q + d v_q.
struct CoefficientSet {
  FrequencyGrid grid;
  std::vector<Complex> a;
  std::vector<Complex> b;
  std::vector<Complex> c;
  std::vector<Complex> d;

  static CoefficientSet zeros(const FrequencyGrid& grid);
};

inline constexpr double kCoefficientTolerance = 1e-12;

struct CoefficientResidual {
  double max_residual = 0.0;  // absolute
  double scale = 1.0;         // max(1, largest autospectrum value)
  std::size_t worst_bin = 0;
  bool passed = true;
};

/// Lower-triangular member of the solution family:
///   a = sqrt(Sxx), b = 0, c = sqrt(Syy) g, d = sqrt(Syy) sqrt(1 - |g|^2)
/// with g = Sxy / sqrt(Sxx Syy).  The cross identity holds in the form
/// conj(a) c + conj(b) d = Sxy, matching <x_q^* y_q> = L Sxy(q) where
/// Sxy is the transform of C_xy(n) = <x_i y_{i+n}>.
CoefficientSet coefficients_from_spectra(const SpectralTriple& t);

/// Max residual of |a|^2+|b|^2 = Sxx, |c|^2+|d|^2 = Syy and
/// conj(a) c + conj(b) d = Sxy.  Passes iff residual <= 1e-12 * scale.
CoefficientResidual verify_coefficients(const CoefficientSet& cs, const SpectralTriple& t);

/// Applies the same real rotation by theta(q) to (a, b) and (c, d).  All
/// three identities are invariant; theta must be even in q to keep the
/// conjugation symmetry.
CoefficientSet rotate_gauge(const CoefficientSet& cs, std::span<const double> theta);

}  // namespace cgsp
