#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>

#include "cgsp/correlation.hpp"
#include "cgsp/error.hpp"
#include "cgsp/estimation.hpp"
#include "cgsp/experiments.hpp"
#include "cgsp/field.hpp"
#include "cgsp/io.hpp"
#include "cgsp/noise.hpp"
#include "cgsp/spectra.hpp"
#include "cgsp/synth.hpp"

#ifndef CGSP_VERSION
#define CGSP_VERSION "dev"
#endif

namespace fs = std::filesystem;

namespace cgsp::cli {
namespace {

constexpr const char* kOutputEnv = "CGSP_OUTPUT_DIR";
constexpr const char* kDefaultOutput = "cgsp-output";

class UsageError : public Error {
 public:
  using Error::Error;
};

struct ModelOptions {
  std::string family = "white";
  std::optional<double> gxx, gyy, gxy;
  std::string coupling;
  double sigma = 10.0;
  double lambda = 0.1;
  double omega = 0.25;
  std::string rho = "auto";
  double amp_xx = 1.0;
  double amp_yy = 1.0;
  std::string table_xx, table_yy, table_xy;
  std::string path = "fft";
  std::size_t length = 0;
  int dim = 1;
};

struct GenerateOptions {
  ModelOptions model;
  std::size_t samples = 1;
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "binary";
  bool cumulate = false;
  bool surface = false;
  unsigned workers = 1;
};

struct EstimateOptions {
  std::string in;
  std::string out;
  std::optional<std::size_t> fit_min, fit_max, max_lag;
};

struct ReproduceCliOptions {
  std::string figure;
  std::string scale = "desk";
  bool allow_full = false;
  std::string out;
  std::uint64_t seed = 42;
  unsigned workers = 1;
  bool independent_noise = false;
};

void add_model_options(CLI::App* app, ModelOptions& m) {
  const std::vector<std::string> families{"white", "gaussian", "exponential", "damped-harmonic", "power-law"};
  auto couplings = families;
  couplings.insert(couplings.begin(), "none");
  app->add_option("--family", m.family, "Autocorrelation family for x and y")
      ->check(CLI::IsMember(families))
      ->capture_default_str();
  app->add_option("--gxx", m.gxx, "Power-law exponent of C_xx");
  app->add_option("--gyy", m.gyy, "Power-law exponent of C_yy");
  app->add_option("--gxy", m.gxy, "Power-law exponent of C_xy");
  app->add_option("--coupling", m.coupling,
                  "Cross-correlation family (default: power-law with --family power-law, else none)")
      ->check(CLI::IsMember(couplings));
  app->add_option("--sigma", m.sigma, "Gaussian width")->capture_default_str();
  app->add_option("--lambda", m.lambda, "Exponential / damped-harmonic decay rate")->capture_default_str();
  app->add_option("--omega", m.omega, "Damped-harmonic angular frequency")->capture_default_str();
  app->add_option("--rho", m.rho, "Cross amplitude, or 'auto' for 0.9 of the largest feasible value")
      ->capture_default_str();
  app->add_option("--amp-xx", m.amp_xx, "Amplitude of C_xx")->capture_default_str();
  app->add_option("--amp-yy", m.amp_yy, "Amplitude of C_yy")->capture_default_str();
  app->add_option("--table-xx", m.table_xx, "Tabulated C_xx (lags 0..L/2), one value per line");
  app->add_option("--table-yy", m.table_yy, "Tabulated C_yy (lags 0..L/2)");
  app->add_option("--table-xy", m.table_xy, "Tabulated C_xy (lags 0..L/2 even, or 0..L-1)");
  app->add_option("--path", m.path, "Spectrum construction")
      ->check(CLI::IsMember({"fft", "analytic"}))
      ->capture_default_str();
  app->add_option("--length", m.length, "Side length L (power of two)")->required();
  app->add_option("--dim", m.dim, "Grid dimension")->check(CLI::Range(1, 2))->capture_default_str();
}

std::vector<double> read_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open table " + path);
  std::vector<double> values;
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string token;
    while (ls >> token) {
      try {
        std::size_t used = 0;
        values.push_back(std::stod(token, &used));
        if (used != token.size()) throw std::invalid_argument(token);
      } catch (const std::exception&) {
        throw IoError("table " + path + " contains a non-numeric entry '" + token + "'");
      }
    }
  }
  return values;
}

CorrelationModel family_model(const std::string& family, const ModelOptions& m, const std::optional<double>& gamma,
                              const char* gamma_flag, double amplitude) {
  const auto f = family_from_string(family);
  if (!f) throw UsageError("unknown family '" + family + "'");
  switch (*f) {
    case Family::white: return CorrelationModel::white(amplitude);
    case Family::gaussian: return CorrelationModel::gaussian(m.sigma, amplitude);
    case Family::exponential: return CorrelationModel::exponential(m.lambda, amplitude);
    case Family::damped_harmonic: return CorrelationModel::damped_harmonic(m.lambda, m.omega, amplitude);
    case Family::power_law:
      if (!gamma) throw UsageError(std::string("--family/--coupling power-law requires ") + gamma_flag);
      return CorrelationModel::power_law(*gamma, amplitude);
    case Family::tabulated: break;
  }
  throw UsageError("unsupported family '" + family + "'");
}

SpectrumPath parse_path(const std::string& p) { return p == "analytic" ? SpectrumPath::analytic : SpectrumPath::fft; }

struct ResolvedModels {
  ModelTriple models;
  FrequencyGrid grid;
  double rho = 0.0;
  bool rho_auto = false;
};

ResolvedModels resolve_models(const ModelOptions& m) {
  FrequencyGrid grid(m.dim, m.length);
  ModelTriple t{CorrelationModel::white(), CorrelationModel::white(), CorrelationModel::white(0.0)};
  t.xx = m.table_xx.empty() ? family_model(m.family, m, m.gxx, "--gxx", m.amp_xx)
                            : CorrelationModel::tabulated(read_table(m.table_xx), m.amp_xx);
  t.yy = m.table_yy.empty() ? family_model(m.family, m, m.gyy, "--gyy", m.amp_yy)
                            : CorrelationModel::tabulated(read_table(m.table_yy), m.amp_yy);

  std::string coupling = m.coupling;
  if (coupling.empty()) coupling = m.family == "power-law" ? "power-law" : "none";

  ResolvedModels r{t, grid, 0.0, m.rho == "auto"};
  if (!r.rho_auto) {
    try {
      std::size_t used = 0;
      r.rho = std::stod(m.rho, &used);
      if (used != m.rho.size() || !std::isfinite(r.rho)) throw std::invalid_argument(m.rho);
    } catch (const std::exception&) {
      throw UsageError("--rho must be a number or 'auto', got '" + m.rho + "'");
    }
  }
  if (!m.table_xy.empty()) {
    r.models.xy = CorrelationModel::tabulated(read_table(m.table_xy));
  } else if (coupling == "none") {
    r.models.xy = CorrelationModel::white(0.0);
    return r;
  } else {
    r.models.xy = family_model(coupling, m, m.gxy, "--gxy", 1.0);
  }
  if (r.rho_auto) r.rho = auto_cross_amplitude(r.models, grid, parse_path(m.path));

  r.models.xy.amplitude *= r.rho;
  return r;
}

fs::path output_dir(const std::string& out) {
  fs::path dir = out.empty() ? fs::path(kDefaultOutput) : fs::path(out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
  return dir;
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream s;
  s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return s.str();
}

// The manifest is a config file for `generate --config`; metadata lives in
// comments so CLI11 ignores it on re-read.
void write_manifest(const fs::path& path, CLI::App* sub, const ResolvedModels& r) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot write manifest " + path.string());
  out << "# cgsp run manifest\n"
      << "# tool_version = " << CGSP_VERSION << "\n"
      << "# timestamp = " << utc_timestamp() << "\n"
      << "# command = " << sub->get_name() << "\n"
      << "# resolved_rho = " << io::format_double(r.rho) << "\n"
      << "# format = CGSP v" << io::kFormatVersion << "\n";
  out << sub->config_to_str(true, false);
  if (!out) throw IoError("write failed: " + path.string());
}

int cmd_generate(CLI::App* sub, const GenerateOptions& o, std::ostream& out, std::ostream& err) {
  if (o.samples < 1) throw UsageError("--samples must be >= 1");
  if (o.cumulate && o.model.dim != 1) throw UsageError("--cumulate needs --dim 1");
  if (o.surface && o.model.dim != 2) throw UsageError("--surface needs --dim 2");

  const auto r = resolve_models(o.model);
  const auto pipe = build_pipeline(r.models, r.grid, parse_path(o.model.path));
  const auto report = validate_feasibility(pipe.triple);
  Ensemble ensemble({r.grid, o.seed, o.samples}, pipe.coefficients);

  const auto dir = output_dir(o.out);
  const bool binary = o.format == "binary";
  std::optional<io::Writer> pairs, traj, surf;
  std::ofstream pairs_csv, traj_csv;
  if (binary) {
    pairs.emplace(dir / "pairs.cgsp", r.grid, o.samples);
    if (o.cumulate) traj.emplace(dir / "trajectories.cgsp", r.grid, o.samples);
    if (o.surface) surf.emplace(dir / "surfaces.cgsp", r.grid, o.samples);
  } else {
    pairs_csv.open(dir / "pairs.csv", std::ios::trunc);
    if (!pairs_csv) throw IoError("cannot write " + (dir / "pairs.csv").string());
    pairs_csv << "realization,index,x,y\n";
    if (o.cumulate) {
      traj_csv.open(dir / "trajectories.csv", std::ios::trunc);
      if (!traj_csv) throw IoError("cannot write " + (dir / "trajectories.csv").string());
      traj_csv << "realization,t,X,Y\n";
    }
  }

  double max_realness = 0.0;
  ensemble.for_each(
      [&](std::size_t k, RealizationPair&& p) {
        max_realness = std::max(max_realness, p.realness_residual);
        if (binary) {
          pairs->write(p.x, p.y);
        } else {
          for (std::size_t i = 0; i < p.x.size(); ++i) {
            pairs_csv << k << ',' << i << ',' << io::format_double(p.x[i]) << ',' << io::format_double(p.y[i]) << '\n';
          }
        }
        if (o.cumulate) {
          const auto t = cumulate(p);
          if (binary) {
            traj->write(t.x, t.y);
          } else {
            for (std::size_t i = 0; i < t.x.size(); ++i) {
              traj_csv << k << ',' << i << ',' << io::format_double(t.x[i]) << ',' << io::format_double(t.y[i])
                       << '\n';
            }
          }
        }
        if (o.surface) {
          const auto s = self_affine_surface(p);
          surf->write(s.hx, s.hy);
        }
      },
      o.workers);
  if (pairs) pairs->close();
  if (traj) traj->close();
  if (surf) surf->close();
  if (pairs_csv.is_open() && !pairs_csv) throw IoError("write failed: pairs.csv");
  if (traj_csv.is_open() && !traj_csv) throw IoError("write failed: trajectories.csv");

  write_manifest(dir / "manifest.ini", sub, r);

  out << "generated " << o.samples << " realization(s) on a " << r.grid.side();
  if (r.grid.dim() == 2) out << "x" << r.grid.side();
  out << " grid in " << dir.string() << "\n"
      << "cross amplitude " << io::format_double(r.rho) << (r.rho_auto ? " (auto)" : "") << ", max coherence "
      << report.max_coherence << "\n"
      << "max imaginary residue " << max_realness << "\n";
  if (pipe.triple.clip.count > 0) {
    err << "note: clipped " << pipe.triple.clip.count << " negative autospectrum value(s), largest magnitude "
        << pipe.triple.clip.max_magnitude << "\n";
  }
  return kOk;
}

fs::path resolve_input(const std::string& in) {
  fs::path p(in);
  if (fs::is_directory(p)) p /= "pairs.cgsp";
  if (!fs::exists(p)) throw IoError("input " + p.string() + " does not exist");
  return p;
}

const char* which_name(Which w) { return w == Which::xx ? "xx" : w == Which::yy ? "yy" : "xy"; }

int cmd_estimate(const EstimateOptions& o, std::ostream& out, std::ostream& err) {
  const auto input = resolve_input(o.in);
  io::Reader reader(input);
  const auto grid = reader.header().grid();
  if (reader.header().count == 0) throw IoError(input.string() + " holds no realizations");

  auto range = default_fit_range(grid);
  if (o.fit_min) range.n_min = *o.fit_min;
  if (o.fit_max) range.n_max = *o.fit_max;

  CorrelationAccumulator acc(grid, range.n_max + 1);
  while (auto rec = reader.next()) {
    acc.add(RealizationPair{grid, std::move(rec->first), std::move(rec->second), 0, 0.0});
  }
  const auto est = acc.result();

  const fs::path dir = output_dir(o.out.empty() ? input.parent_path().string() : o.out);
  const std::size_t available = est.lags.size();
  const std::size_t default_rows = grid.dim() == 1 ? grid.side() / 2 + 1 : available;
  const std::size_t rows = std::min(available, o.max_lag ? *o.max_lag + 1 : default_rows);
  const std::span<const std::size_t> lags(est.lags.data(), rows);
  for (Which w : {Which::xx, Which::yy, Which::xy}) {
    io::write_lag_csv(dir / (std::string("c") + which_name(w) + ".csv"), lags,
                      std::span<const double>(est.values(w).data(), rows),
                      std::span<const double>(est.stderrs(w).data(), rows));
  }

  std::ostringstream report;
  report << "input: " << input.string() << "\n"
         << "realizations: " << est.n_realizations << ", grid: " << grid.side() << "^" << grid.dim() << "\n"
         << "fit range: [" << range.n_min << ", " << range.n_max << "]\n";
  if (est.n_realizations == 1) {
    err << "warning: single realization; standard errors are undefined and estimates are noisy\n";
    report << "warning: small ensemble (1 realization)\n";
  }

  std::ofstream fits(dir / "fits.csv", std::ios::trunc);
  if (!fits) throw IoError("cannot write " + (dir / "fits.csv").string());
  fits << "which,gamma,uncertainty,scatter,n_min,n_max,goodness,status\n";
  for (Which w : {Which::xx, Which::yy, Which::xy}) {
    try {
      const auto f = fit_power_law_exponent(est, w, range);
      const double scatter = exponent_scatter(est, w, range);
      report << "gamma_" << which_name(w) << " = " << std::fixed << std::setprecision(4) << f.gamma << " +/- "
             << f.uncertainty << " (fit), +/- " << scatter << " (across realizations)\n"
             << std::defaultfloat;
      fits << which_name(w) << ',' << io::format_double(f.gamma) << ',' << io::format_double(f.uncertainty) << ','
           << io::format_double(scatter) << ',' << range.n_min << ',' << range.n_max << ','
           << io::format_double(f.goodness) << ",ok\n";
    } catch (const FitError& e) {
      report << "gamma_" << which_name(w) << ": fit refused: " << e.what() << "\n";
      fits << which_name(w) << ",nan,nan,nan," << range.n_min << ',' << range.n_max << ",nan,refused\n";
    }
  }
  if (!fits) throw IoError("write failed: fits.csv");

  std::ofstream rep(dir / "report.txt", std::ios::trunc);
  rep << report.str();
  if (!rep) throw IoError("write failed: report.txt");
  out << report.str();
  return kOk;
}

int cmd_validate(const ModelOptions& m, std::ostream& out) {
  const auto r = resolve_models(m);
  const auto t = radial_spectra(r.models, r.grid, parse_path(m.path));
  const auto report = validate_feasibility(t);
  out << "grid: " << r.grid.side() << "^" << r.grid.dim() << ", cross amplitude " << io::format_double(r.rho)
      << (r.rho_auto ? " (auto)" : "") << "\n";
  out << "max coherence = " << report.max_coherence << (report.feasible ? " (<= 1)" : " (> 1)") << "\n";
  out << "clipped autospectrum values: " << t.clip.count << " (max magnitude " << t.clip.max_magnitude << ")\n";
  const double headroom = max_cross_scale(t);
  if (std::isfinite(headroom)) {
    out << "largest feasible cross amplitude: " << io::format_double(headroom * r.models.xy.amplitude) << "\n";
  }
  if (report.feasible) {
    out << "feasible\n";
    return kOk;
  }
  out << "infeasible: " << report.violating_bins.size() << " violating bin(s):";
  for (std::size_t i = 0; i < std::min<std::size_t>(10, report.violating_bins.size()); ++i) {
    out << ' ' << report.violating_bins[i];
  }
  out << (report.violating_bins.size() > 10 ? " ...\n" : "\n");
  return kInfeasible;
}

void write_power_law_csvs(const fs::path& dir, const std::string& prefix, const PowerLawCase& c, std::size_t rows) {
  const auto& e = c.estimate;
  rows = std::min(rows, e.lags.size());
  const std::span<const std::size_t> lags(e.lags.data(), rows);
  for (Which w : {Which::xx, Which::yy, Which::xy}) {
    io::write_lag_csv(dir / (prefix + "_" + c.name + "_" + which_name(w) + ".csv"), lags,
                      std::span<const double>(e.values(w).data(), rows),
                      std::span<const double>(e.stderrs(w).data(), rows));
  }
}

void report_power_law(std::ostream& s, const std::string& title, const PowerLawResult& r) {
  s << title << ": L = " << r.side << (r.dim == 2 ? " (2-D)" : "") << ", " << r.realizations
    << " realizations, fit range [" << r.range.n_min << ", " << r.range.n_max << "], tolerance " << r.tolerance
    << "\n";
  const char* names[3] = {"xx", "yy", "xy"};
  for (const auto& c : r.cases) {
    s << "  case " << c.name << " (cross amplitude " << std::setprecision(4) << c.cross_amplitude << "):";
    for (int w = 0; w < 3; ++w) {
      s << "  gamma_" << names[w] << " = " << std::fixed << std::setprecision(3) << c.fits[w].gamma << " +/- "
        << c.fits[w].uncertainty << " [target " << c.targets[w] << "]" << std::defaultfloat;
    }
    s << "  " << (c.pass ? "PASS" : "FAIL") << "\n";
  }
}

int cmd_reproduce(const ReproduceCliOptions& o, std::ostream& out) {
  ReproduceOptions opt;
  opt.scale = o.scale == "full" ? Scale::full : Scale::desk;
  opt.seed = o.seed;
  opt.workers = o.workers;
  opt.shared_noise = !o.independent_noise;
  if (opt.scale == Scale::full && o.figure != "fig1" && !o.allow_full) {
    throw UsageError("full-scale " + o.figure + " needs several GB and hours of CPU; pass --allow-full to run it");
  }
  const fs::path dir = output_dir(o.out.empty() ? (fs::path(kDefaultOutput) / o.figure).string() : o.out);

  std::ostringstream summary;
  bool pass = false;
  if (o.figure == "fig1") {
    const auto r = run_fig1(opt);
    summary << "fig1: L = " << r.side << ", " << r.realizations << " realizations, RMS tolerance " << r.tolerance
            << " over |n| <= " << r.max_lag << "\n";
    for (const auto& p : r.panels) {
      std::vector<double> lag(p.lags.begin(), p.lags.end()), zeros(p.lags.size(), 0.0);
      io::write_columns_csv(dir / ("fig1_" + p.name + "_cxy.csv"), {"lag", "value", "stderr"},
                            {lag, p.measured, p.stderrs});
      io::write_columns_csv(dir / ("fig1_" + p.name + "_target.csv"), {"lag", "value", "stderr"},
                            {lag, p.target, zeros});
      std::vector<double> t(p.trajectory.x.size());
      for (std::size_t i = 0; i < t.size(); ++i) t[i] = static_cast<double>(i + 1);
      io::write_columns_csv(dir / ("fig1_" + p.name + "_trajectory.csv"), {"t", "X", "Y"},
                            {t, p.trajectory.x, p.trajectory.y});
      summary << "  " << p.name << " coupling (amplitude " << p.cross.amplitude << "): RMS = " << p.rms << "  "
              << (p.pass ? "PASS" : "FAIL") << "\n";
    }
    pass = r.pass();
  } else if (o.figure == "fig2") {
    const auto r = run_fig2(opt);
    for (const auto& c : r.cases) write_power_law_csvs(dir, "fig2", c, 16 * r.range.n_max + 1);
    report_power_law(summary, "fig2", r);
    pass = r.pass();
  } else if (o.figure == "fig3") {
    const auto r = run_fig3(opt);
    for (const auto& c : r.cases) write_power_law_csvs(dir, "fig3", c, r.side / 2 + 1);
    const auto s = fig3_surfaces(opt.seed);
    const std::size_t L = s.grid.side();
    std::vector<double> si(s.hx.size()), ti(s.hx.size());
    for (std::size_t k = 0; k < si.size(); ++k) {
      si[k] = static_cast<double>(k / L + 1);
      ti[k] = static_cast<double>(k % L + 1);
    }
    io::write_columns_csv(dir / "fig3_surfaces.csv", {"s", "t", "hx", "hy"}, {si, ti, s.hx, s.hy});
    report_power_law(summary, "fig3", r);
    pass = r.pass();
  } else {
    throw UsageError("unknown figure '" + o.figure + "'");
  }
  summary << (pass ? "overall: PASS\n" : "overall: FAIL\n");

  std::ofstream f(dir / "summary.txt", std::ios::trunc);
  f << summary.str();
  if (!f) throw IoError("write failed: summary.txt");
  out << summary.str() << "data written to " << dir.string() << "\n";
  return pass ? kOk : kFailure;
}

std::string flag_name(const std::string& token) {
  if (token.rfind("--", 0) != 0) return {};
  return token.substr(2, token.find('=') - 2);
}

// Subcommand-level config files are not read by CLI11, so `generate --config
// FILE` is expanded into --key=value tokens here.  Flags given on the command
// line win over the file.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  if (args.size() < 2 || args[1] != "generate") return args;
  std::string file;
  std::set<std::string> given;
  for (std::size_t i = 2; i < args.size(); ++i) {
    const auto name = flag_name(args[i]);
    if (name == "config") {
      if (const auto eq = args[i].find('='); eq != std::string::npos) {
        file = args[i].substr(eq + 1);
      } else if (i + 1 < args.size()) {
        file = args[++i];
      }
    } else if (!name.empty()) {
      given.insert(name);
    }
  }
  if (file.empty()) return args;
  if (!fs::is_regular_file(file)) throw CLI::FileError::Missing(file);

  std::vector<std::string> result(args.begin(), args.begin() + 2);
  for (const auto& item : CLI::ConfigINI().from_file(file)) {
    if (!item.parents.empty() || item.inputs.empty() || given.count(item.name) > 0) continue;
    if (item.inputs.size() == 1 && item.inputs.front().empty()) continue;
    for (const auto& value : item.inputs) result.push_back("--" + item.name + "=" + value);
  }
  for (std::size_t i = 2; i < args.size(); ++i) {
    if (flag_name(args[i]) == "config") {
      if (args[i].find('=') == std::string::npos) ++i;
      continue;
    }
    result.push_back(args[i]);
  }
  return result;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Coupled Gaussian sequence and field generator"};
  app.set_version_flag("--version", CGSP_VERSION);
  app.require_subcommand(1);

  GenerateOptions gen;
  auto* g = app.add_subcommand("generate", "Synthesize coupled realizations");
  g->add_option("--config", "Read flags from a key = value file (a manifest.ini works)")->configurable(false);
  add_model_options(g, gen.model);
  g->add_option("--samples", gen.samples, "Number of realizations")->capture_default_str();
  g->add_option("--seed", gen.seed, "Master seed")->capture_default_str();
  g->add_option("--out", gen.out, "Output directory")->envname(kOutputEnv);
  g->add_option("--format", gen.format, "Output format")
      ->check(CLI::IsMember({"binary", "csv"}))
      ->capture_default_str();
  g->add_flag("--cumulate", gen.cumulate, "Also write cumulative-sum trajectories (d = 1)");
  g->add_flag("--surface", gen.surface, "Also write self-affine surfaces (d = 2)");
  g->add_option("--workers", gen.workers, "Generator threads (output does not depend on it)")->capture_default_str();

  EstimateOptions est;
  auto* e = app.add_subcommand("estimate", "Measure correlations and fit power-law exponents");
  e->add_option("--in", est.in, "CGSP file or directory containing pairs.cgsp")->required();
  e->add_option("--out", est.out, "Output directory (default: next to the input)");
  e->add_option("--fit-min", est.fit_min, "First lag of the exponent fit");
  e->add_option("--fit-max", est.fit_max, "Last lag of the exponent fit");
  e->add_option("--max-lag", est.max_lag, "Last lag written to the CSV tables");

  ModelOptions val;
  auto* v = app.add_subcommand("validate", "Check that a target triple is realizable");
  add_model_options(v, val);

  ReproduceCliOptions rep;
  auto* r = app.add_subcommand("reproduce", "Rerun a reference experiment and check its tolerances");
  r->add_option("figure", rep.figure, "Experiment")->required()->check(CLI::IsMember({"fig1", "fig2", "fig3"}));
  r->add_option("--scale", rep.scale, "Experiment size")
      ->check(CLI::IsMember({"desk", "full"}))
      ->capture_default_str();
  r->add_flag("--allow-full", rep.allow_full, "Permit full-scale runs");
  r->add_option("--out", rep.out, "Output directory")->envname(kOutputEnv);
  r->add_option("--seed", rep.seed, "Master seed")->capture_default_str();
  r->add_option("--workers", rep.workers, "Generator threads")->capture_default_str();
  r->add_flag("--independent-noise", rep.independent_noise,
              "Use a different driving noise for every panel / case");

  std::vector<std::string> expanded;
  try {
    expanded = expand_config(args);
  } catch (const CLI::FileError& fe) {
    err << "i/o error: " << fe.what() << "\n";
    return kIoError;
  } catch (const CLI::ParseError& pe) {
    return app.exit(pe, out, err) == 0 ? kOk : kUsage;
  }
  std::vector<const char*> argv;
  argv.reserve(expanded.size());
  for (const auto& a : expanded) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& pe) {
    const int code = app.exit(pe, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (g->parsed()) return cmd_generate(g, gen, out, err);
    if (e->parsed()) return cmd_estimate(est, out, err);
    if (v->parsed()) return cmd_validate(val, out);
    if (r->parsed()) return cmd_reproduce(rep, out);
  } catch (const UsageError& ex) {
    err << "usage error: " << ex.what() << "\n";
    return kUsage;
  } catch (const InvalidArgument& ex) {
    err << "invalid argument: " << ex.what() << "\n";
    return kUsage;
  } catch (const InfeasibleTarget& ex) {
    err << "infeasible target: " << ex.what() << "\n";
    return kInfeasible;
  } catch (const IoError& ex) {
    err << "i/o error: " << ex.what() << "\n";
    return kIoError;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return kFailure;
  }
  return kUsage;
}

}  // namespace cgsp::cli
