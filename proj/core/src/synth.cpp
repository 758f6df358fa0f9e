#include "cgsp/synth.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <sstream>
#include <thread>
#include <utility>

#include "cgsp/error.hpp"
#include "cgsp/noise.hpp"
#include "fft.hpp"

namespace cgsp {

void GeneratorConfig::validate() const {
  if (grid.side() < 8) throw InvalidArgument("generator length must be >= 8");
  if (n_realizations < 1) throw InvalidArgument("need at least one realization");
}

RealizationPair synthesize(const CoefficientSet& cs, std::uint64_t seed) {
  const auto& grid = cs.grid;
  const std::size_t n = grid.size();
  const auto& fft = detail::Fft::for_grid(grid);

  const auto white = white_pair(n, seed);
  std::vector<Complex> u(white.u.begin(), white.u.end());
  std::vector<Complex> v(white.v.begin(), white.v.end());
  fft.forward(u);
  fft.forward(v);

  std::vector<Complex> xq(n), yq(n);
  for (std::size_t k = 0; k < n; ++k) {
    xq[k] = cs.a[k] * u[k] + cs.b[k] * v[k];
    yq[k] = cs.c[k] * u[k] + cs.d[k] * v[k];
  }
  fft.inverse(xq);
  fft.inverse(yq);

  RealizationPair out{grid, std::vector<double>(n), std::vector<double>(n), seed, 0.0};
  double max_re = 0.0, max_im = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    out.x[k] = xq[k].real();
    out.y[k] = yq[k].real();
    max_re = std::max({max_re, std::abs(xq[k].real()), std::abs(yq[k].real())});
    max_im = std::max({max_im, std::abs(xq[k].imag()), std::abs(yq[k].imag())});
  }
  out.realness_residual = max_im / (1.0 + max_re);
  if (!(out.realness_residual <= kRealnessTolerance)) {
    std::ostringstream msg;
    msg << "synthesized pair is not real: imaginary residue " << out.realness_residual
        << " exceeds " << kRealnessTolerance << " (coefficients lack conjugation symmetry)";
    throw NumericalError(msg.str());
  }
  return out;
}

SequencePair synthesize_pair(const CoefficientSet& cs, std::uint64_t seed) {
  if (cs.grid.dim() != 1) throw InvalidArgument("synthesize_pair needs a one-dimensional grid");
  if (cs.grid.side() < 8) throw InvalidArgument("sequence length must be >= 8");
  return synthesize(cs, seed);
}

TrajectoryPair cumulate(const SequencePair& sp) {
  TrajectoryPair t{std::vector<double>(sp.x.size()), std::vector<double>(sp.y.size())};
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < sp.x.size(); ++i) {
    sx += sp.x[i];
    sy += sp.y[i];
    t.x[i] = sx;
    t.y[i] = sy;
  }
  return t;
}

Ensemble::Ensemble(GeneratorConfig cfg, CoefficientSet cs) : cfg_(std::move(cfg)), cs_(std::move(cs)) {
  cfg_.validate();
  if (!(cs_.grid == cfg_.grid)) throw InvalidArgument("coefficient grid does not match generator grid");
}

RealizationPair Ensemble::realization(std::size_t k) const {
  return synthesize(cs_, child_seed(cfg_.master_seed, k));
}

void Ensemble::for_each(const std::function<void(std::size_t, RealizationPair&&)>& fn, unsigned workers) const {
  const std::size_t n = cfg_.n_realizations;
  workers = std::max(1u, workers);
  if (workers == 1) {
    for (std::size_t k = 0; k < n; ++k) fn(k, realization(k));
    return;
  }
  std::vector<RealizationPair> batch;
  std::vector<std::exception_ptr> errors;
  for (std::size_t start = 0; start < n; start += workers) {
    const std::size_t count = std::min<std::size_t>(workers, n - start);
    batch.assign(count, RealizationPair{cfg_.grid, {}, {}, 0, 0.0});
    errors.assign(count, nullptr);
    {
      std::vector<std::jthread> threads;
      threads.reserve(count);
      for (std::size_t i = 0; i < count; ++i) {
        threads.emplace_back([&, i] {
          try {
            batch[i] = realization(start + i);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        });
      }
    }
    for (std::size_t i = 0; i < count; ++i) {
      if (errors[i]) std::rethrow_exception(errors[i]);
      fn(start + i, std::move(batch[i]));
    }
  }
}

}  // namespace cgsp
