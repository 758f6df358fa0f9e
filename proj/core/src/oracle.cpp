#include "cgsp/oracle.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <string>

#include "cgsp/error.hpp"

namespace cgsp::oracle {
namespace {

using Matrix = Eigen::MatrixXd;
using CMatrix = Eigen::MatrixXcd;

void check_length(std::size_t L) {
  if (L < 2 || L > kMaxOracleLength) {
    throw InvalidArgument("oracle supports 2 <= L <= " + std::to_string(kMaxOracleLength) + ", got " +
                          std::to_string(L));
  }
}

// C(n) for n = 0..L-1, evaluated straight from the model definition.
std::vector<double> lag_values(const CorrelationModel& m, std::size_t L) {
  m.validate();
  std::vector<double> c(L);
  if (m.family == Family::tabulated) {
    if (m.table.size() == L) {
      for (std::size_t n = 0; n < L; ++n) c[n] = m.amplitude * m.table[n];
    } else if (m.table.size() == L / 2 + 1) {
      for (std::size_t n = 0; n < L; ++n) c[n] = m.amplitude * m.table[n <= L / 2 ? n : L - n];
    } else {
      throw InvalidArgument("tabulated model length does not match oracle L");
    }
    return c;
  }
  for (std::size_t n = 0; n < L; ++n) {
    const std::size_t folded = n <= L / 2 ? n : L - n;
    c[n] = m.evaluate(static_cast<double>(folded));
  }
  return c;
}

Matrix to_eigen(const JointCovariance& c) {
  const auto n = static_cast<Eigen::Index>(c.dim());
  Matrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = c(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  }
  return m;
}

// Real-space operator of a diagonal Fourier multiplier: F^{-1} diag(w) F.
CMatrix multiplier(const std::vector<std::complex<double>>& w) {
  const auto L = static_cast<Eigen::Index>(w.size());
  CMatrix F(L, L), Finv(L, L);
  for (Eigen::Index q = 0; q < L; ++q) {
    for (Eigen::Index n = 0; n < L; ++n) {
      const double phase = -2.0 * std::numbers::pi * static_cast<double>((q * n) % L) / static_cast<double>(L);
      F(q, n) = std::polar(1.0, phase);
      Finv(n, q) = std::polar(1.0 / static_cast<double>(L), -phase);
    }
  }
  CMatrix D = CMatrix::Zero(L, L);
  for (Eigen::Index q = 0; q < L; ++q) D(q, q) = w[static_cast<std::size_t>(q)];
  return Finv * D * F;
}

}  // namespace

double JointCovariance::smallest_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Matrix> es(to_eigen(*this), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double JointCovariance::max_abs_difference(const JointCovariance& other) const {
  if (other.length != length) throw InvalidArgument("covariances have different sizes");
  double m = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) m = std::max(m, std::abs(values[i] - other.values[i]));
  return m;
}

JointCovariance build_joint_covariance(const ModelTriple& models, std::size_t L) {
  check_length(L);
  const auto cxx = lag_values(models.xx, L);
  const auto cyy = lag_values(models.yy, L);
  const auto cxy = lag_values(models.xy, L);
  JointCovariance cov{L, std::vector<double>(4 * L * L)};
  for (std::size_t i = 0; i < L; ++i) {
    for (std::size_t j = 0; j < L; ++j) {
      const std::size_t lag = (j + L - i) % L;
      cov(i, j) = cxx[lag];
      cov(L + i, L + j) = cyy[lag];
      cov(i, L + j) = cxy[lag];  // <x_i y_j>
      cov(L + j, i) = cxy[lag];
    }
  }
  return cov;
}

JointCovariance exact_generator_covariance(const CoefficientSet& cs) {
  if (cs.grid.dim() != 1) throw InvalidArgument("exact_generator_covariance supports d = 1 only");
  const std::size_t L = cs.grid.side();
  check_length(L);
  const CMatrix A = multiplier(cs.a), B = multiplier(cs.b), C = multiplier(cs.c), D = multiplier(cs.d);
  // x = A u + B v, y = C u + D v with u, v real unit white noise.
  const CMatrix sxx = A * A.adjoint() + B * B.adjoint();
  const CMatrix syy = C * C.adjoint() + D * D.adjoint();
  const CMatrix sxy = A * C.adjoint() + B * D.adjoint();
  JointCovariance cov{L, std::vector<double>(4 * L * L)};
  for (std::size_t i = 0; i < L; ++i) {
    for (std::size_t j = 0; j < L; ++j) {
      const auto ii = static_cast<Eigen::Index>(i), jj = static_cast<Eigen::Index>(j);
      cov(i, j) = sxx(ii, jj).real();
      cov(L + i, L + j) = syy(ii, jj).real();
      cov(i, L + j) = sxy(ii, jj).real();
      cov(L + j, i) = sxy(ii, jj).real();
    }
  }
  return cov;
}

std::vector<SamplePair> oracle_sample(const JointCovariance& cov, std::size_t count, std::uint64_t seed) {
  const std::size_t L = cov.length;
  check_length(L);
  Eigen::SelfAdjointEigenSolver<Matrix> es(to_eigen(cov));
  if (es.info() != Eigen::Success) throw NumericalError("eigendecomposition of the joint covariance failed");
  const auto& lambda = es.eigenvalues();
  const double top = std::max(1.0, lambda.maxCoeff());
  if (lambda.minCoeff() < -kJitter * top) {
    throw InfeasibleTarget("joint covariance is not positive semidefinite (smallest eigenvalue " +
                           std::to_string(lambda.minCoeff()) + ")");
  }
  const Matrix root = es.eigenvectors() * lambda.cwiseMax(0.0).cwiseSqrt().asDiagonal();

  std::mt19937_64 engine(seed);
  std::normal_distribution<double> normal;
  std::vector<SamplePair> out;
  out.reserve(count);
  Eigen::VectorXd xi(static_cast<Eigen::Index>(2 * L));
  for (std::size_t s = 0; s < count; ++s) {
    for (Eigen::Index i = 0; i < xi.size(); ++i) xi(i) = normal(engine);
    const Eigen::VectorXd z = root * xi;
    SamplePair p{std::vector<double>(L), std::vector<double>(L)};
    for (std::size_t i = 0; i < L; ++i) {
      p.x[i] = z(static_cast<Eigen::Index>(i));
      p.y[i] = z(static_cast<Eigen::Index>(L + i));
    }
    out.push_back(std::move(p));
  }
  return out;
}

namespace {

// 7-point Gauss / 15-point Kronrod nodes and weights on [-1, 1].
constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <typename F>
std::pair<double, double> gauss_kronrod(const F& f, double a, double b) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  const double fc = f(c);
  double kron = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[j];
    const double fsum = f(c - dx) + f(c + dx);
    kron += kWgk[j] * fsum;
    if (j % 2 == 1) gauss += kWg[j / 2] * fsum;
  }
  return {kron * h, std::abs((kron - gauss) * h)};
}

template <typename F>
double adaptive(const F& f, double a, double b, double tol, int depth, int& evaluations) {
  const auto [value, err] = gauss_kronrod(f, a, b);
  if (++evaluations > 200000) throw NumericalError("Bessel K quadrature did not converge");
  if (err <= tol || depth >= 40) {
    if (err > tol && depth >= 40) throw NumericalError("Bessel K quadrature did not converge");
    return value;
  }
  const double m = 0.5 * (a + b);
  return adaptive(f, a, m, 0.5 * tol, depth + 1, evaluations) + adaptive(f, m, b, 0.5 * tol, depth + 1, evaluations);
}

}  // namespace

double bessel_k_numeric(double nu, double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw InvalidArgument("bessel_k_numeric needs x > 0");
  if (!(std::abs(nu) < 5.0)) throw InvalidArgument("bessel_k_numeric supports |nu| < 5");
  const double anu = std::abs(nu);

  // Work with exp(x) * integrand so values stay O(1); the integrand peaks
  // at t = 0 or at asinh(|nu|/x) and then decays double-exponentially.
  const auto f = [&](double t) { return std::exp(-x * (std::cosh(t) - 1.0)) * std::cosh(anu * t); };
  double upper = 1.0;
  while (x * (std::cosh(upper) - 1.0) - anu * upper < 60.0) upper *= 1.5;

  // Rough magnitude for the absolute tolerance.
  int evaluations = 0;
  const double coarse = gauss_kronrod(f, 0.0, upper).first;
  const double tol = 1e-12 * std::max(std::abs(coarse), 1e-300);
  const double value = adaptive(f, 0.0, upper, tol, 0, evaluations);
  return value * std::exp(-x);
}

}  // namespace cgsp::oracle
