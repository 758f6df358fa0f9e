#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cgsp/error.hpp"
#include "cgsp/experiments.hpp"
#include "cgsp/oracle.hpp"

using namespace cgsp;

namespace {

// I_nu(x) from its power series.
double bessel_i_series(double nu, double x) {
  double sum = 0.0;
  for (int k = 0; k < 60; ++k) {
    sum += std::exp((2.0 * k + nu) * std::log(x / 2.0) - std::lgamma(k + 1.0) - std::lgamma(k + nu + 1.0));
  }
  return sum;
}

// K_nu = pi/2 (I_{-nu} - I_nu) / sin(nu pi) for non-integer nu.
double bessel_k_series(double nu, double x) {
  return std::numbers::pi / 2.0 * (bessel_i_series(-nu, x) - bessel_i_series(nu, x)) / std::sin(nu * std::numbers::pi);
}

}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("quadrature Bessel K") {
  CHECK(oracle::bessel_k_numeric(0.5, 1.0) ==
        doctest::Approx(std::sqrt(std::numbers::pi / 2.0) * std::exp(-1.0)).epsilon(1e-10));
  CHECK(oracle::bessel_k_numeric(-0.15, 1.0) == doctest::Approx(oracle::bessel_k_numeric(0.15, 1.0)).epsilon(1e-12));
  CHECK(std::abs(oracle::bessel_k_numeric(0.25, 2.0) - bessel_k_series(0.25, 2.0)) <= 1e-8 * bessel_k_series(0.25, 2.0));
  CHECK(std::abs(oracle::bessel_k_numeric(-0.35, 0.05) - bessel_k_series(-0.35, 0.05)) <=
        1e-8 * bessel_k_series(-0.35, 0.05));

  for (double nu : {-0.45, -0.15, 0.0, 0.3, 1.7, 4.5}) {
    double prev = INFINITY;
    for (double x = 0.01; x < 40.0; x *= 1.7) {
      const double k = oracle::bessel_k_numeric(nu, x);
      CHECK(k > 0.0);
      CHECK(k < prev);
      CHECK(k == doctest::Approx(std::cyl_bessel_k(std::abs(nu), x)).epsilon(1e-8));
      prev = k;
    }
  }
  CHECK_THROWS_AS(oracle::bessel_k_numeric(0.2, 0.0), InvalidArgument);
  CHECK_THROWS_AS(oracle::bessel_k_numeric(5.5, 1.0), InvalidArgument);
}

TEST_CASE("joint covariance construction") {
  const auto w = CorrelationModel::white();
  const auto id = oracle::build_joint_covariance({w, w, CorrelationModel::white(0.0)}, 8);
  for (std::size_t i = 0; i < 16; ++i) {
    for (std::size_t j = 0; j < 16; ++j) CHECK(id(i, j) == (i == j ? 1.0 : 0.0));
  }

  // Mirrored Gaussians are slightly indefinite on short rings, exponentials are not.
  const auto g = CorrelationModel::exponential(0.4);
  const auto perfect = oracle::build_joint_covariance({g, g, g}, 16);
  for (std::size_t i = 0; i < 16; ++i) {
    for (std::size_t j = 0; j < 16; ++j) CHECK(perfect(i, 16 + j) == perfect(i, j));
  }
  CHECK(std::abs(perfect.smallest_eigenvalue()) < 1e-10);

  const auto gauss = oracle::build_joint_covariance({w, w, CorrelationModel::gaussian(2.0, 0.15)}, 8);
  CHECK(gauss.smallest_eigenvalue() >= -1e-10);
  CHECK(gauss(2, 8 + 5) == doctest::Approx(0.15 * std::exp(-9.0 / 8.0)));
  CHECK(gauss(2, 8 + 0) == doctest::Approx(0.15 * std::exp(-4.0 / 8.0)));
  CHECK_THROWS_AS(oracle::build_joint_covariance({w, w, w}, 128), InvalidArgument);
}

TEST_CASE("exact sampling") {
  oracle::JointCovariance zero{8, std::vector<double>(256, 0.0)};
  for (const auto& s : oracle::oracle_sample(zero, 3, 1)) {
    for (double v : s.x) CHECK(v == 0.0);
  }

  const auto w = CorrelationModel::white();
  const auto id = oracle::build_joint_covariance({w, w, CorrelationModel::white(0.0)}, 8);
  const auto draws = oracle::oracle_sample(id, 20000, 2);
  double m = 0.0, v = 0.0, c = 0.0;
  for (const auto& s : draws) {
    m += s.x[3];
    v += s.x[3] * s.x[3];
    c += s.x[3] * s.y[3];
  }
  CHECK(std::abs(m / 20000) < 4.0 / std::sqrt(20000.0));
  CHECK(v / 20000 == doctest::Approx(1.0).epsilon(0.04));
  CHECK(std::abs(c / 20000) < 4.0 / std::sqrt(20000.0));

  const auto g = CorrelationModel::exponential(0.4);
  for (const auto& s : oracle::oracle_sample(oracle::build_joint_covariance({g, g, g}, 16), 5, 3)) {
    for (std::size_t i = 0; i < 16; ++i) CHECK(std::abs(s.x[i] - s.y[i]) < 1e-6);
  }

  CHECK_THROWS_AS(oracle::oracle_sample(oracle::build_joint_covariance({w, w, CorrelationModel::white(1.2)}, 8), 1, 0),
                  InfeasibleTarget);
}

TEST_CASE("generator covariance matches the targets") {
  const FrequencyGrid grid(1, 32);
  CHECK(oracle::exact_generator_covariance(CoefficientSet::zeros(grid)).max_abs_difference(
            oracle::JointCovariance{32, std::vector<double>(64 * 64, 0.0)}) == 0.0);

  const ModelTriple uncoupled{CorrelationModel::exponential(0.3), CorrelationModel::gaussian(2.0),
                              CorrelationModel::white(0.0)};
  const auto cov = oracle::exact_generator_covariance(build_pipeline(uncoupled, grid).coefficients);
  for (std::size_t i = 0; i < 32; ++i) {
    for (std::size_t j = 0; j < 32; ++j) CHECK(std::abs(cov(i, 32 + j)) < 1e-12);
  }

  const ModelTriple gauss{CorrelationModel::white(), CorrelationModel::white(), CorrelationModel::gaussian(2.0, 0.15)};
  const auto exact = oracle::exact_generator_covariance(build_pipeline(gauss, grid).coefficients);
  CHECK(exact.max_abs_difference(oracle::build_joint_covariance(gauss, 32)) <= 1e-10);
}

}
