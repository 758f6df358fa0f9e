// Acceptance suite: one PASS/FAIL line per criterion.  Exit status is 1 if
// any criterion fails, except those named by --expect-fail=N[,M...]; those
// still print FAIL and only change the exit status if they start passing.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cgsp/correlation.hpp"
#include "cgsp/coupling.hpp"
#include "cgsp/error.hpp"
#include "cgsp/experiments.hpp"
#include "cgsp/io.hpp"
#include "cgsp/noise.hpp"
#include "cgsp/oracle.hpp"
#include "cgsp/spectra.hpp"
#include "cli.hpp"

using namespace cgsp;
namespace fs = std::filesystem;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

fs::path scratch(const std::string& name) {
  const char* env = std::getenv("CGSP_TEST_TMP");
  fs::path dir = (env ? fs::path(env) : fs::temp_directory_path() / "cgsp-tests") / "acceptance" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

int run_cli(std::vector<std::string> args, std::string* out = nullptr) {
  args.insert(args.begin(), "cgsp");
  std::ostringstream o, e;
  const int code = cli::run(args, o, e);
  if (out) *out = o.str() + e.str();
  return code;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string fmt(double v, int prec = 3) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(prec) << v;
  return s.str();
}

std::string sci(double v) {
  std::ostringstream s;
  s << std::scientific << std::setprecision(2) << v;
  return s.str();
}

double max_realness = 0.0;

std::string describe(const PowerLawResult& r) {
  std::string s;
  const char* names[3] = {"xx", "yy", "xy"};
  for (const auto& c : r.cases) {
    s += c.name + ":";
    for (int w = 0; w < 3; ++w) {
      s += std::string(" ") + names[w] + "=" + fmt(c.fits[w].gamma) + "/" + fmt(c.targets[w], 1);
    }
    s += "; ";
  }
  return s;
}

Verdict criterion_fig2() {
  const auto r = run_fig2({});
  max_realness = std::max(max_realness, r.max_realness);
  return {r.pass(), "L=" + std::to_string(r.side) + ", " + std::to_string(r.realizations) + " realizations, range [" +
                        std::to_string(r.range.n_min) + "," + std::to_string(r.range.n_max) + "], tol 0.05; " +
                        describe(r)};
}

Verdict criterion_fig1() {
  const auto r = run_fig1({});
  max_realness = std::max(max_realness, r.max_realness);
  std::string d = "L=" + std::to_string(r.side) + ", " + std::to_string(r.realizations) + " realizations; RMS";
  for (const auto& p : r.panels) d += " " + p.name + "=" + fmt(p.rms, 4);
  return {r.pass(), d + " (limit 0.05)"};
}

Verdict criterion_fig3() {
  const auto r = run_fig3({}, {"A"});
  max_realness = std::max(max_realness, r.max_realness);
  return {r.pass(), std::to_string(r.side) + "^2, " + std::to_string(r.realizations) + " realizations, range [" +
                        std::to_string(r.range.n_min) + "," + std::to_string(r.range.n_max) + "], tol 0.1; " +
                        describe(r)};
}

Verdict criterion_oracle_identity() {
  const FrequencyGrid grid(1, 32);
  std::mt19937_64 rng(4);
  std::normal_distribution<double> nd;
  std::vector<double> table(32);
  for (auto& v : table) v = nd(rng);
  const std::vector<std::pair<std::string, CorrelationModel>> cross{
      {"white", CorrelationModel::white()},
      {"gaussian", CorrelationModel::gaussian(2.0)},
      {"exponential", CorrelationModel::exponential(0.3)},
      {"damped-harmonic", CorrelationModel::damped_harmonic(0.2, 0.8)},
      {"power-law", CorrelationModel::power_law(0.6)},
      {"tabulated", CorrelationModel::tabulated(table)}};
  double worst = 0.0;
  std::string detail;
  for (const auto& [name, model] : cross) {
    ModelTriple m{CorrelationModel::exponential(0.25), CorrelationModel::power_law(0.8), model};
    m.xy.amplitude = auto_cross_amplitude(m, grid, SpectrumPath::fft);
    const auto pipe = build_pipeline(m, grid);
    const double diff =
        oracle::exact_generator_covariance(pipe.coefficients).max_abs_difference(oracle::build_joint_covariance(m, 32));
    worst = std::max(worst, diff);
    detail += name + "=" + sci(diff) + " ";
  }
  return {worst <= 1e-10, "L=32, max |exact - target| per family: " + detail + "(limit 1e-10)"};
}

// Sample covariance of the joint vector (x, y) with per-entry standard errors.
struct CovAccumulator {
  std::size_t dim;
  std::size_t n = 0;
  std::vector<double> s1, s2;  // sums of products and squared products
  explicit CovAccumulator(std::size_t d) : dim(d), s1(d * d, 0.0), s2(d * d, 0.0) {}
  void add(const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<double> z(x);
    z.insert(z.end(), y.begin(), y.end());
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = i; j < dim; ++j) {
        const double p = z[i] * z[j];
        s1[i * dim + j] += p;
        s2[i * dim + j] += p * p;
      }
    }
    ++n;
  }
  double mean(std::size_t i, std::size_t j) const { return s1[i * dim + j] / n; }
  double var_of_mean(std::size_t i, std::size_t j) const {
    const double m = mean(i, j);
    return (s2[i * dim + j] / n - m * m) / (n - 1);
  }
};

Verdict criterion_sampling_oracle() {
  const std::size_t L = 16, n = 100000;
  const FrequencyGrid grid(1, L);
  ModelTriple m{CorrelationModel::white(), CorrelationModel::white(), CorrelationModel::gaussian(2.0)};
  m.xy.amplitude = auto_cross_amplitude(m, grid, SpectrumPath::fft);
  const auto pipe = build_pipeline(m, grid);

  CovAccumulator gen(2 * L), ora(2 * L);
  Ensemble({grid, 42, n}, pipe.coefficients).for_each([&](std::size_t, RealizationPair&& p) {
    max_realness = std::max(max_realness, p.realness_residual);
    gen.add(p.x, p.y);
  });
  for (const auto& s : oracle::oracle_sample(oracle::build_joint_covariance(m, L), n, 43)) ora.add(s.x, s.y);

  std::size_t within = 0, total = 0;
  for (std::size_t i = 0; i < 2 * L; ++i) {
    for (std::size_t j = i; j < 2 * L; ++j) {
      const double se = std::sqrt(gen.var_of_mean(i, j) + ora.var_of_mean(i, j));
      within += std::abs(gen.mean(i, j) - ora.mean(i, j)) <= 3.0 * se;
      ++total;
    }
  }
  const double frac = static_cast<double>(within) / static_cast<double>(total);
  return {frac >= 0.99, "L=16 Gaussian coupling (amplitude " + fmt(m.xy.amplitude, 4) + "), 1e5 realizations each; " +
                            std::to_string(within) + "/" + std::to_string(total) + " entries within 3 SE (" +
                            fmt(100.0 * frac, 2) + "%, need 99%)"};
}

CorrelationModel random_model(std::mt19937_64& rng, int dim) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  switch (std::uniform_int_distribution<int>(0, 3)(rng)) {
    case 0: return CorrelationModel::gaussian(0.5 + 6.0 * u(rng));
    case 1: return CorrelationModel::exponential(0.05 + u(rng));
    case 2: return CorrelationModel::power_law(0.1 + (dim == 1 ? 0.85 : 1.8) * u(rng));
    default: return CorrelationModel::white();
  }
}

Verdict criterion_coefficients() {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  int triples = 0;
  std::vector<CoefficientSet> sets;
  std::vector<SpectralTriple> spectra;
  while (triples < 20) {
    const int dim = u(rng) < 0.3 ? 2 : 1;
    const std::size_t L = dim == 1 ? (std::size_t{64} << std::uniform_int_distribution<int>(0, 6)(rng)) : 64;
    const FrequencyGrid grid(dim, L);
    ModelTriple m{random_model(rng, dim), random_model(rng, dim), random_model(rng, dim)};
    m.xx.amplitude = std::pow(10.0, 2.0 * u(rng) - 1.0);
    m.yy.amplitude = std::pow(10.0, 2.0 * u(rng) - 1.0);
    Pipeline pipe{{grid, {}, {}, {}, false, {}}, CoefficientSet::zeros(grid)};
    try {
      // Autos that are not positive definite on the ring are redrawn.
      m.xy.amplitude = auto_cross_amplitude(m, grid, SpectrumPath::fft, 0.05 + 0.95 * u(rng));
      pipe.triple = radial_spectra(m, grid);
    } catch (const InfeasibleTarget&) {
      continue;
    }
    if (!validate_feasibility(pipe.triple).feasible) continue;
    pipe.coefficients = coefficients_from_spectra(pipe.triple);
    const auto r = verify_coefficients(pipe.coefficients, pipe.triple);
    worst = std::max(worst, r.max_residual / r.scale);
    sets.push_back(pipe.coefficients);
    spectra.push_back(pipe.triple);
    ++triples;
  }
  bool gauge_ok = true;
  double worst_gauge = 0.0;
  std::uniform_real_distribution<double> phase(-3.14159, 3.14159);
  for (int f = 0; f < 5; ++f) {
    const auto& cs = sets[static_cast<std::size_t>(f) * 3];
    std::vector<double> theta(cs.grid.size());
    for (std::size_t k = 0; k < theta.size(); ++k) {
      const std::size_t nk = cs.grid.negated(k);
      if (nk < k) {
        theta[k] = theta[nk];
      } else {
        theta[k] = phase(rng);
      }
    }
    const auto r = verify_coefficients(rotate_gauge(cs, theta), spectra[static_cast<std::size_t>(f) * 3]);
    gauge_ok = gauge_ok && r.passed;
    worst_gauge = std::max(worst_gauge, r.max_residual / r.scale);
  }
  return {worst <= 1e-12 && gauge_ok, "20 random triples: max residual " + sci(worst) +
                                          " per unit spectral scale; 5 gauge fields: max " + sci(worst_gauge) +
                                          " (limit 1e-12)"};
}

Verdict criterion_feasibility_gate() {
  const auto dir = scratch("gate");
  const int rejected = run_cli({"validate", "--coupling", "white", "--rho", "1.2", "--length", "256"});
  const int gen_rejected = run_cli(
      {"generate", "--coupling", "white", "--rho", "1.2", "--length", "256", "--out", (dir / "bad").string()});
  const int accepted = run_cli({"validate", "--coupling", "white", "--rho", "1", "--length", "256"});
  const int generated = run_cli({"generate", "--family", "exponential", "--lambda", "0.2", "--coupling", "exponential",
                                 "--rho", "1", "--length", "256", "--samples", "5", "--out", (dir / "ok").string()});
  double worst = INFINITY;
  if (generated == cli::kOk) {
    worst = 0.0;
    io::Reader r(dir / "ok" / "pairs.cgsp");
    while (auto rec = r.next()) {
      for (std::size_t i = 0; i < rec->first.size(); ++i) worst = std::max(worst, std::abs(rec->first[i] - rec->second[i]));
    }
  }
  const bool pass = rejected == cli::kInfeasible && gen_rejected == cli::kInfeasible && accepted == cli::kOk &&
                    generated == cli::kOk && worst <= 1e-9;
  return {pass, "coherence 1.2: validate exit " + std::to_string(rejected) + ", generate exit " +
                    std::to_string(gen_rejected) + " (expect 2); coherence 1: validate exit " +
                    std::to_string(accepted) + ", generate exit " + std::to_string(generated) + ", max|x-y| = " +
                    sci(worst) + " (limit 1e-9)"};
}

Verdict criterion_analytic_spectrum() {
  const FrequencyGrid grid(1, 1024);
  double worst = 0.0;
  std::string detail;
  for (double gamma : {0.3, 0.5, 0.7}) {
    ClipReport clip;
    const auto fft = autospectrum_from_correlation(sample_correlation(CorrelationModel::power_law(gamma), grid), grid, clip);
    const auto ana = power_law_spectrum_analytic(gamma, grid, oracle::bessel_k_numeric);
    double w = 0.0;
    for (std::size_t m = 1024 / 64; m <= 1024 / 8; ++m) w = std::max(w, std::abs(fft[m] - ana[m]) / ana[m]);
    worst = std::max(worst, w);
    detail += "gamma=" + fmt(gamma, 1) + ": " + fmt(100.0 * w, 3) + "% ";
  }
  return {worst < 0.01, "L=1024, bins m in [16,128], max relative deviation " + detail + "(limit 1%)"};
}

Verdict criterion_realness_determinism() {
  struct Config {
    ModelTriple models;
    int dim;
    std::size_t side;
  };
  const std::vector<Config> matrix{
      {{CorrelationModel::white(), CorrelationModel::white(), CorrelationModel::gaussian(10.0)}, 1, 1024},
      {{CorrelationModel::white(), CorrelationModel::white(), CorrelationModel::damped_harmonic(0.05, 0.25)}, 1, 1024},
      {{CorrelationModel::power_law(0.7), CorrelationModel::power_law(0.8), CorrelationModel::power_law(0.6)}, 1, 1 << 16},
      {{CorrelationModel::exponential(0.1), CorrelationModel::exponential(0.5), CorrelationModel::exponential(0.2)}, 1, 8},
      {{CorrelationModel::power_law(1.3), CorrelationModel::power_law(1.5), CorrelationModel::power_law(1.1)}, 2, 128},
      {{CorrelationModel::power_law(0.7), CorrelationModel::power_law(1.5), CorrelationModel::power_law(1.0)}, 2, 256},
  };
  bool identical = true;
  for (const auto& c : matrix) {
    const FrequencyGrid grid(c.dim, c.side);
    auto m = c.models;
    m.xy.amplitude = auto_cross_amplitude(m, grid, SpectrumPath::fft);
    const auto pipe = build_pipeline(m, grid);
    const Ensemble ens({grid, 2718, 4}, pipe.coefficients);
    std::vector<RealizationPair> serial, threaded;
    ens.for_each([&](std::size_t, RealizationPair&& p) { serial.push_back(std::move(p)); }, 1);
    ens.for_each([&](std::size_t, RealizationPair&& p) { threaded.push_back(std::move(p)); }, 3);
    for (std::size_t k = 0; k < serial.size(); ++k) {
      max_realness = std::max(max_realness, serial[k].realness_residual);
      identical = identical && serial[k].x == threaded[k].x && serial[k].y == threaded[k].y;
      const auto again = synthesize(pipe.coefficients, child_seed(2718, k));
      identical = identical && again.x == serial[k].x && again.y == serial[k].y;
    }
  }

  const auto dir = scratch("determinism");
  const std::vector<std::string> args{"generate", "--family", "power-law", "--gxx", "1.3", "--gyy", "1.5", "--gxy",
                                      "1.1", "--dim", "2", "--length", "64", "--samples", "3", "--surface"};
  auto a = args, b = args;
  a.insert(a.end(), {"--out", (dir / "a").string()});
  b.insert(b.end(), {"--out", (dir / "b").string(), "--workers", "2"});
  const bool cli_ok = run_cli(a) == cli::kOk && run_cli(b) == cli::kOk;
  const bool files_same = cli_ok && read_file(dir / "a" / "pairs.cgsp") == read_file(dir / "b" / "pairs.cgsp") &&
                          read_file(dir / "a" / "surfaces.cgsp") == read_file(dir / "b" / "surfaces.cgsp");
  const bool rerun_ok =
      cli_ok && run_cli({"generate", "--config", (dir / "a" / "manifest.ini").string(), "--out", (dir / "c").string()}) ==
                    cli::kOk &&
      read_file(dir / "a" / "pairs.cgsp") == read_file(dir / "c" / "pairs.cgsp");

  const bool pass = max_realness <= 1e-9 && identical && files_same && rerun_ok;
  return {pass, "max imaginary residue " + sci(max_realness) + " over all runs (limit 1e-9); in-memory repeats " +
                    (identical ? "identical" : "DIFFER") + "; CLI outputs across worker counts " +
                    (files_same ? "identical" : "DIFFER") + "; manifest rerun " + (rerun_ok ? "identical" : "DIFFERS")};
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::size_t> expected;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    const std::string prefix = "--expect-fail=";
    if (arg.rfind(prefix, 0) != 0) {
      std::cerr << "usage: " << argv[0] << " [--expect-fail=N[,M...]]\n";
      return 2;
    }
    std::stringstream list(arg.substr(prefix.size()));
    for (std::string item; std::getline(list, item, ',');) expected.push_back(std::stoul(item));
  }

  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"Fig. 2 desk-scale exponents (cases A, B, C)", criterion_fig2},
      {"Fig. 1 desk-scale coupling curves", criterion_fig1},
      {"Fig. 3 desk-scale 2-D exponents (case A)", criterion_fig3},
      {"exact generator covariance equals target covariance", criterion_oracle_identity},
      {"pipeline and exact sampler covariances agree", criterion_sampling_oracle},
      {"coefficient identities and gauge rotations", criterion_coefficients},
      {"feasibility gate", criterion_feasibility_gate},
      {"analytic spectrum via quadrature Bessel vs FFT path", criterion_analytic_spectrum},
      {"realness and determinism", criterion_realness_determinism},
  };
  int failures = 0, surprises = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("threw: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool known = std::find(expected.begin(), expected.end(), i + 1) != expected.end();
    failures += !v.pass;
    surprises += v.pass == known;
    std::cout << "criterion " << (i + 1) << ": " << (v.pass ? "PASS" : "FAIL") << "  " << criteria[i].first << "  ["
              << v.detail << "] (" << fmt(secs, 1) << " s)" << (known ? (v.pass ? "  [expected FAIL]" : "  [known failure]") : "")
              << std::endl;
  }
  std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed" << std::endl;
  return surprises == 0 ? 0 : 1;
}
