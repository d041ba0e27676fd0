#include "cvgauss/gaussian_state.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

namespace cvg {

namespace {

void check_mode_count(std::size_t modes) {
  if (modes == 0 || modes > kMaxModes) {
    throw std::invalid_argument("unsupported mode count " + std::to_string(modes));
  }
}

}  // namespace

GaussianState::GaussianState(Matrix covariance, Vector means)
    : covariance_(std::move(covariance)), means_(std::move(means)) {
  const auto dim = covariance_.rows();
  if (dim == 0 || dim % 2 != 0 || covariance_.cols() != dim) {
    throw DimensionMismatch("covariance must be a non-empty 2n x 2n matrix");
  }
  check_mode_count(static_cast<std::size_t>(dim / 2));
  if (means_.size() != dim) {
    throw DimensionMismatch("mean vector length " + std::to_string(means_.size()) +
                            " does not match covariance dimension " + std::to_string(dim));
  }
  if (!covariance_.allFinite() || !means_.allFinite()) {
    throw std::invalid_argument("state contains non-finite entries");
  }
  const double asymmetry = (covariance_ - covariance_.transpose()).cwiseAbs().maxCoeff();
  const double scale = std::max(1.0, covariance_.cwiseAbs().maxCoeff());
  if (asymmetry > kTolSymmetry * scale) {
    throw std::invalid_argument("covariance is not symmetric (max asymmetry " +
                                std::to_string(asymmetry) + ")");
  }
  covariance_ = 0.5 * (covariance_ + covariance_.transpose()).eval();
}

GaussianState::GaussianState(Matrix covariance)
    : GaussianState(covariance, Vector::Zero(covariance.rows())) {}

Eigen::Matrix2d GaussianState::block(std::size_t a, std::size_t b) const {
  if (a >= modes() || b >= modes()) {
    throw std::out_of_range("mode index out of range");
  }
  return covariance_.block<2, 2>(2 * static_cast<Eigen::Index>(a), 2 * static_cast<Eigen::Index>(b));
}

Matrix symplectic_form(std::size_t modes) {
  Matrix omega = Matrix::Zero(2 * modes, 2 * modes);
  for (std::size_t k = 0; k < modes; ++k) {
    const auto i = static_cast<Eigen::Index>(2 * k);
    omega(i, i + 1) = 1.0;
    omega(i + 1, i) = -1.0;
  }
  return omega;
}

GaussianState vacuum(std::size_t modes) {
  check_mode_count(modes);
  return GaussianState(Matrix::Identity(2 * modes, 2 * modes));
}

GaussianState thermal_state(std::span<const double> occupations) {
  check_mode_count(occupations.size());
  Vector diag(2 * occupations.size());
  for (std::size_t k = 0; k < occupations.size(); ++k) {
    const double n = occupations[k];
    if (!(n >= 1.0)) {
      throw UnphysicalState("thermal occupation " + std::to_string(n) + " is below the vacuum value 1");
    }
    diag(2 * k) = n;
    diag(2 * k + 1) = n;
  }
  return GaussianState(diag.asDiagonal().toDenseMatrix());
}

std::complex<double> char_fn(const GaussianState& state, const Vector& u) {
  if (u.size() != state.covariance().rows()) {
    throw DimensionMismatch("argument length does not match state dimension");
  }
  const double quadratic = u.dot(state.covariance() * u);
  const double linear = state.means().dot(u);
  return std::exp(std::complex<double>(-0.5 * quadratic, linear));
}

PhysicalityReport validate_physical(const GaussianState& state) {
  using Complex = std::complex<double>;
  const Eigen::MatrixXcd h = state.covariance().cast<Complex>() +
                             Complex(0.0, 1.0) * symplectic_form(state.modes()).cast<Complex>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
  const double min_eig = solver.eigenvalues().minCoeff();
  return {min_eig >= -kTolPhysical, min_eig};
}

void require_physical(const GaussianState& state) {
  const auto report = validate_physical(state);
  if (!report.physical) {
    throw UnphysicalState("covariance violates the uncertainty principle (min eigenvalue of V + i*Omega = " +
                          std::to_string(report.min_eigenvalue) + ")");
  }
}

GaussianState reduce(const GaussianState& state, std::span<const std::size_t> modes) {
  const auto n = static_cast<Eigen::Index>(modes.size());
  Matrix v(2 * n, 2 * n);
  Vector d(2 * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto mi = modes[static_cast<std::size_t>(i)];
    if (mi >= state.modes()) {
      throw std::out_of_range("mode index out of range");
    }
    d.segment<2>(2 * i) = state.means().segment<2>(2 * static_cast<Eigen::Index>(mi));
    for (Eigen::Index j = 0; j < n; ++j) {
      v.block<2, 2>(2 * i, 2 * j) = state.block(mi, modes[static_cast<std::size_t>(j)]);
    }
  }
  return GaussianState(std::move(v), std::move(d));
}

GaussianState direct_sum(const GaussianState& a, const GaussianState& b) {
  const auto na = a.covariance().rows();
  const auto nb = b.covariance().rows();
  Matrix v = Matrix::Zero(na + nb, na + nb);
  v.topLeftCorner(na, na) = a.covariance();
  v.bottomRightCorner(nb, nb) = b.covariance();
  Vector d(na + nb);
  d << a.means(), b.means();
  return GaussianState(std::move(v), std::move(d));
}

double StandardFormParams::delta1() const { return n1 - std::abs(c1); }
double StandardFormParams::delta2() const { return n2 - std::abs(c2); }

StandardFormParams to_standard_form_params(const GaussianState& state) {
  if (state.modes() != 2) {
    throw DimensionMismatch("standard form requires a two-mode state");
  }
  const Matrix& v = state.covariance();
  // Entries that must vanish: local q-p terms and the q-p cross correlations.
  constexpr int kZeroEntries[][2] = {{0, 1}, {2, 3}, {0, 3}, {1, 2}};
  for (const auto& e : kZeroEntries) {
    if (std::abs(v(e[0], e[1])) > kTolForm) {
      throw FormMismatch("V(" + std::to_string(e[0]) + "," + std::to_string(e[1]) + ") = " +
                         std::to_string(v(e[0], e[1])) + " breaks the standard-form pattern");
    }
  }
  if (std::abs(v(0, 0) - v(2, 2)) > kTolForm || std::abs(v(1, 1) - v(3, 3)) > kTolForm) {
    throw FormMismatch("local blocks differ; use the general negativity instead");
  }
  StandardFormParams p;
  p.n1 = 0.5 * (v(0, 0) + v(2, 2));
  p.n2 = 0.5 * (v(1, 1) + v(3, 3));
  p.c1 = v(0, 2);
  p.c2 = v(1, 3);
  return p;
}

GaussianState from_standard_form(const StandardFormParams& params) {
  Matrix v(4, 4);
  // clang-format off
  v << params.n1, 0.0,       params.c1, 0.0,
       0.0,       params.n2, 0.0,       params.c2,
       params.c1, 0.0,       params.n1, 0.0,
       0.0,       params.c2, 0.0,       params.n2;
  // clang-format on
  return GaussianState(std::move(v));
}

}  // namespace cvg
