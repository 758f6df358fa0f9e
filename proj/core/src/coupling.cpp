#include "cgsp/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "cgsp/error.hpp"

namespace cgsp {

CoefficientSet CoefficientSet::zeros(const FrequencyGrid& grid) {
  const std::vector<Complex> z(grid.size());
  return {grid, z, z, z, z};
}

CoefficientSet coefficients_from_spectra(const SpectralTriple& t) {
  const auto report = validate_feasibility(t);
  if (!t.feasible || !report.feasible) {
    std::ostringstream msg;
    msg << "spectral triple is infeasible: max coherence " << report.max_coherence << " at "
        << report.violating_bins.size() << " bin(s)";
    throw InfeasibleTarget(msg.str());
  }

  auto cs = CoefficientSet::zeros(t.grid);
  for (std::size_t k = 0; k < t.sxx.size(); ++k) {
    // Mirror bins copy their partner so the symmetry is exact, not just to rounding.
    const std::size_t nk = t.grid.negated(k);
    if (nk < k) {
      cs.a[k] = std::conj(cs.a[nk]);
      cs.b[k] = std::conj(cs.b[nk]);
      cs.c[k] = std::conj(cs.c[nk]);
      cs.d[k] = std::conj(cs.d[nk]);
      continue;
    }
    const double ax = std::sqrt(t.sxx[k]);
    const double ay = std::sqrt(t.syy[k]);
    cs.a[k] = ax;
    if (ax == 0.0 || ay == 0.0) {
      // Cross bin is below the zero floor here (checked by the feasibility gate).
      cs.d[k] = ay;
      continue;
    }
    Complex g = t.sxy[k] / (ax * ay);
    if (nk == k) g = g.real();
    const double mag = std::abs(g);
    if (mag > 1.0) g /= mag;  // roundoff at the coherence-one boundary
    cs.c[k] = ay * g;
    const double rest = 1.0 - std::norm(g);
    cs.d[k] = rest > 1e-14 ? ay * std::sqrt(rest) : 0.0;  // exact zero for perfect coupling
  }
  return cs;
}

CoefficientResidual verify_coefficients(const CoefficientSet& cs, const SpectralTriple& t) {
  if (!(cs.grid == t.grid)) throw InvalidArgument("coefficient set and spectra live on different grids");
  CoefficientResidual r;
  for (std::size_t k = 0; k < t.sxx.size(); ++k) r.scale = std::max({r.scale, t.sxx[k], t.syy[k]});
  for (std::size_t k = 0; k < t.sxx.size(); ++k) {
    const double rx = std::abs(std::norm(cs.a[k]) + std::norm(cs.b[k]) - t.sxx[k]);
    const double ry = std::abs(std::norm(cs.c[k]) + std::norm(cs.d[k]) - t.syy[k]);
    const double rxy = std::abs(std::conj(cs.a[k]) * cs.c[k] + std::conj(cs.b[k]) * cs.d[k] - t.sxy[k]);
    const double worst = std::max({rx, ry, rxy});
    if (worst > r.max_residual) {
      r.max_residual = worst;
      r.worst_bin = k;
    }
  }
  r.passed = r.max_residual <= kCoefficientTolerance * r.scale;
  return r;
}

CoefficientSet rotate_gauge(const CoefficientSet& cs, std::span<const double> theta) {
  if (theta.size() != cs.a.size()) throw InvalidArgument("gauge field size does not match grid");
  CoefficientSet out = cs;
  for (std::size_t k = 0; k < theta.size(); ++k) {
    const double co = std::cos(theta[k]);
    const double si = std::sin(theta[k]);
    out.a[k] = co * cs.a[k] - si * cs.b[k];
    out.b[k] = si * cs.a[k] + co * cs.b[k];
    out.c[k] = co * cs.c[k] - si * cs.d[k];
    out.d[k] = si * cs.c[k] + co * cs.d[k];
  }
  return out;
}

}  // namespace cgsp
