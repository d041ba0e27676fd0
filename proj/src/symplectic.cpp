#include "cvgauss/symplectic.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cvg {

namespace {

constexpr double kMaxSqueeze = 10.0;

void check_mode(std::size_t modes, std::size_t mode) {
  if (modes == 0 || modes > kMaxModes) {
    throw std::invalid_argument("unsupported mode count " + std::to_string(modes));
  }
  if (mode >= modes) {
    throw std::out_of_range("mode " + std::to_string(mode) + " out of range for " + std::to_string(modes) +
                            "-mode map");
  }
}

void check_pair(std::size_t modes, std::size_t a, std::size_t b) {
  check_mode(modes, a);
  check_mode(modes, b);
  if (a == b) {
    throw std::invalid_argument("two-mode operation needs distinct modes");
  }
}

void check_squeeze(double s) {
  if (!(std::abs(s) <= kMaxSqueeze)) {
    throw std::invalid_argument("squeezing parameter outside [-10, 10]");
  }
}

Eigen::Index idx(std::size_t mode) { return 2 * static_cast<Eigen::Index>(mode); }

}  // namespace

SymplecticMap::SymplecticMap(Matrix m) : m_(std::move(m)) {
  const auto dim = m_.rows();
  if (dim == 0 || dim % 2 != 0 || m_.cols() != dim) {
    throw DimensionMismatch("symplectic map must be a non-empty 2n x 2n matrix");
  }
  if (static_cast<std::size_t>(dim / 2) > kMaxModes) {
    throw std::invalid_argument("unsupported mode count");
  }
  const double scale = std::max(1.0, m_.cwiseAbs().maxCoeff());
  if (!is_symplectic(1e-10 * scale * scale)) {
    throw std::invalid_argument("matrix does not preserve the symplectic form");
  }
}

SymplecticMap SymplecticMap::identity(std::size_t modes) {
  return SymplecticMap(Matrix::Identity(2 * modes, 2 * modes));
}

bool SymplecticMap::is_symplectic(double tol) const {
  const Matrix omega = symplectic_form(modes());
  return (m_.transpose() * omega * m_ - omega).cwiseAbs().maxCoeff() <= tol;
}

SymplecticMap squeeze_single(std::size_t modes, std::size_t mode, double s) {
  check_mode(modes, mode);
  check_squeeze(s);
  Matrix m = Matrix::Identity(2 * modes, 2 * modes);
  m(idx(mode), idx(mode)) = std::exp(-s);
  m(idx(mode) + 1, idx(mode) + 1) = std::exp(s);
  return SymplecticMap(std::move(m));
}

SymplecticMap rotate(std::size_t modes, std::size_t mode, double phi) {
  check_mode(modes, mode);
  Matrix m = Matrix::Identity(2 * modes, 2 * modes);
  const auto i = idx(mode);
  m(i, i) = std::cos(phi);
  m(i, i + 1) = std::sin(phi);
  m(i + 1, i) = -std::sin(phi);
  m(i + 1, i + 1) = std::cos(phi);
  return SymplecticMap(std::move(m));
}

SymplecticMap two_mode_squeeze(std::size_t modes, std::size_t mode_a, std::size_t mode_b, double s) {
  check_pair(modes, mode_a, mode_b);
  check_squeeze(s);
  Matrix m = Matrix::Identity(2 * modes, 2 * modes);
  const Eigen::Matrix2d diag = std::cosh(s) * Eigen::Matrix2d::Identity();
  const Eigen::Matrix2d cross = std::sinh(s) * Eigen::Vector2d(1.0, -1.0).asDiagonal().toDenseMatrix();
  const auto a = idx(mode_a);
  const auto b = idx(mode_b);
  m.block<2, 2>(a, a) = diag;
  m.block<2, 2>(b, b) = diag;
  m.block<2, 2>(a, b) = cross;
  m.block<2, 2>(b, a) = cross;
  return SymplecticMap(std::move(m));
}

SymplecticMap beam_split(std::size_t modes, std::size_t mode_a, std::size_t mode_b, double theta) {
  check_pair(modes, mode_a, mode_b);
  const double r = std::sin(theta);
  const double t = std::cos(theta);
  Matrix m = Matrix::Identity(2 * modes, 2 * modes);
  const auto a = idx(mode_a);
  const auto b = idx(mode_b);
  m.block<2, 2>(a, a) = t * Eigen::Matrix2d::Identity();
  m.block<2, 2>(b, b) = t * Eigen::Matrix2d::Identity();
  m.block<2, 2>(a, b) = -r * Eigen::Matrix2d::Identity();
  m.block<2, 2>(b, a) = r * Eigen::Matrix2d::Identity();
  return SymplecticMap(std::move(m));
}

SymplecticMap compose(const SymplecticMap& outer, const SymplecticMap& inner) {
  if (outer.modes() != inner.modes()) {
    throw DimensionMismatch("cannot compose maps on different mode counts");
  }
  // Row-vector convention: d -> (d M_inner) M_outer.
  return SymplecticMap(inner.matrix() * outer.matrix());
}

GaussianState apply(const SymplecticMap& map, const GaussianState& state) {
  if (map.modes() != state.modes()) {
    throw DimensionMismatch("map acts on " + std::to_string(map.modes()) + " modes, state has " +
                            std::to_string(state.modes()));
  }
  const Matrix& m = map.matrix();
  return GaussianState(m.transpose() * state.covariance() * m, m.transpose() * state.means());
}

GaussianState apply(const Displacement& displacement, const GaussianState& state) {
  check_mode(state.modes(), displacement.mode);
  Vector d = state.means();
  d(idx(displacement.mode)) += displacement.dq;
  d(idx(displacement.mode) + 1) += displacement.dp;
  return GaussianState(state.covariance(), std::move(d));
}

GaussianState apply_loss(const GaussianState& state, double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw std::invalid_argument("efficiency must lie in [0, 1]");
  }
  const auto dim = state.covariance().rows();
  return GaussianState(eta * state.covariance() + (1.0 - eta) * Matrix::Identity(dim, dim),
                       std::sqrt(eta) * state.means());
}

}  // namespace cvg
