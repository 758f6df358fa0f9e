#include "cgsp/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "cgsp/error.hpp"

namespace cgsp {

std::string_view to_string(Family f) noexcept {
  switch (f) {
    case Family::white: return "white";
    case Family::gaussian: return "gaussian";
    case Family::exponential: return "exponential";
    case Family::damped_harmonic: return "damped-harmonic";
    case Family::power_law: return "power-law";
    case Family::tabulated: return "tabulated";
  }
  return "unknown";
}

std::optional<Family> family_from_string(std::string_view name) noexcept {
  if (name == "white") return Family::white;
  if (name == "gaussian") return Family::gaussian;
  if (name == "exponential") return Family::exponential;
  if (name == "damped-harmonic" || name == "damped_harmonic") return Family::damped_harmonic;
  if (name == "power-law" || name == "power_law" || name == "power_law_makse") return Family::power_law;
  if (name == "tabulated") return Family::tabulated;
  return std::nullopt;
}

CorrelationModel CorrelationModel::white(double amplitude) {
  return {Family::white, {}, {}, amplitude};
}

CorrelationModel CorrelationModel::gaussian(double sigma, double amplitude) {
  return {Family::gaussian, {{"sigma", sigma}}, {}, amplitude};
}

CorrelationModel CorrelationModel::exponential(double lambda, double amplitude) {
  return {Family::exponential, {{"lambda", lambda}}, {}, amplitude};
}

CorrelationModel CorrelationModel::damped_harmonic(double lambda, double omega, double amplitude) {
  return {Family::damped_harmonic, {{"lambda", lambda}, {"omega", omega}}, {}, amplitude};
}

CorrelationModel CorrelationModel::power_law(double gamma, double amplitude) {
  return {Family::power_law, {{"gamma", gamma}}, {}, amplitude};
}

CorrelationModel CorrelationModel::tabulated(std::vector<double> values, double amplitude) {
  return {Family::tabulated, {}, std::move(values), amplitude};
}

double CorrelationModel::param(const std::string& name) const {
  const auto it = params.find(name);
  if (it == params.end()) {
    throw InvalidArgument(std::string(to_string(family)) + " model is missing parameter '" + name + "'");
  }
  if (!std::isfinite(it->second)) {
    throw InvalidArgument("parameter '" + name + "' is not finite");
  }
  return it->second;
}

void CorrelationModel::validate() const {
  if (!std::isfinite(amplitude)) throw InvalidArgument("correlation amplitude is not finite");
  switch (family) {
    case Family::white:
      break;
    case Family::gaussian:
      if (!(param("sigma") > 0.0)) throw InvalidArgument("gaussian sigma must be > 0");
      break;
    case Family::exponential:
      if (!(param("lambda") > 0.0)) throw InvalidArgument("exponential lambda must be > 0");
      break;
    case Family::damped_harmonic:
      if (!(param("lambda") > 0.0)) throw InvalidArgument("damped-harmonic lambda must be > 0");
      if (!(param("omega") >= 0.0)) throw InvalidArgument("damped-harmonic omega must be >= 0");
      break;
    case Family::power_law: {
      const double g = param("gamma");
      if (!(g > 0.0 && g < 2.0)) throw InvalidArgument("power-law gamma must lie in (0, 2)");
      break;
    }
    case Family::tabulated:
      if (table.empty()) throw InvalidArgument("tabulated model has an empty table");
      for (double v : table) {
        if (!std::isfinite(v)) throw InvalidArgument("tabulated model contains a non-finite value");
      }
      break;
  }
}

double CorrelationModel::evaluate(double lag) const {
  const double l = std::abs(lag);
  switch (family) {
    case Family::white:
      return l == 0.0 ? amplitude : 0.0;
    case Family::gaussian: {
      const double s = param("sigma");
      return amplitude * std::exp(-l * l / (2.0 * s * s));
    }
    case Family::exponential:
      return amplitude * std::exp(-param("lambda") * l);
    case Family::damped_harmonic:
      return amplitude * std::exp(-param("lambda") * l) * std::cos(param("omega") * l);
    case Family::power_law:
      return amplitude * std::pow(1.0 + l * l, -0.5 * param("gamma"));
    case Family::tabulated:
      break;
  }
  throw InvalidArgument("tabulated models have no closed form; use sample_correlation");
}

CorrelationModel CorrelationModel::scaled(double factor) const {
  CorrelationModel m = *this;
  m.amplitude *= factor;
  return m;
}

std::vector<double> sample_correlation(const CorrelationModel& model, const FrequencyGrid& grid) {
  model.validate();
  const std::size_t L = grid.side();
  std::vector<double> out(grid.size());

  if (model.family == Family::tabulated) {
    if (grid.dim() != 1) throw InvalidArgument("tabulated models are only supported for d = 1");
    if (model.table.size() == L) {
      for (std::size_t n = 0; n < L; ++n) out[n] = model.amplitude * model.table[n];
    } else if (model.table.size() == L / 2 + 1) {
      for (std::size_t n = 0; n < L; ++n) out[n] = model.amplitude * model.table[std::min(n, L - n)];
    } else {
      throw InvalidArgument("tabulated model has " + std::to_string(model.table.size()) +
                            " entries; expected L/2+1 = " + std::to_string(L / 2 + 1) + " or L = " +
                            std::to_string(L));
    }
    return out;
  }

  for (std::size_t k = 0; k < out.size(); ++k) out[k] = model.evaluate(grid.periodic_distance(k));
  return out;
}

}  // namespace cgsp
