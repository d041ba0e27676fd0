#include "cvgauss/measures.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "cvgauss/symplectic.hpp"

namespace cvg {

namespace {

constexpr double kTolPure = 1e-6;
constexpr double kTolBoundary = 1e-9;

void require_single_mode(const GaussianState& s) {
  if (s.modes() != 1) {
    throw DimensionMismatch("fidelity is defined here for single-mode states");
  }
}

bool is_pure(const GaussianState& s) { return std::abs(s.covariance().determinant() - 1.0) <= kTolPure; }

bool overlap_only(const GaussianState& s1, const GaussianState& s2) { return !is_pure(s1) && !is_pure(s2); }

// Output mode 1 of a 50:50 beam splitter with r = 1/sqrt 2, t = -1/sqrt 2.
GaussianState mixed_output(const GaussianState& s1, const GaussianState& s2) {
  require_single_mode(s1);
  require_single_mode(s2);
  const GaussianState joint = apply(beam_split(2, 0, 1, 0.75 * std::numbers::pi), direct_sum(s1, s2));
  constexpr std::array<std::size_t, 1> kOutput{0};
  return reduce(joint, kOutput);
}

}  // namespace

FidelityResult fidelity_closed_form(const GaussianState& s1, const GaussianState& s2) {
  require_single_mode(s1);
  require_single_mode(s2);
  const Eigen::Matrix2d sum = s1.covariance() + s2.covariance();
  const double det = sum.determinant();
  if (!(det > 0.0)) {
    throw UnphysicalState("V1 + V2 is singular");
  }
  const Eigen::Vector2d dd = s1.means() - s2.means();
  const double value = 2.0 / std::sqrt(det) * std::exp(-0.5 * dd.dot(sum.inverse() * dd));
  return {value, FidelityRoute::closed_form, overlap_only(s1, s2)};
}

double gaussian_wigner(const GaussianState& state, const Vector& point) {
  if (point.size() != state.means().size()) {
    throw DimensionMismatch("phase-space point has the wrong dimension");
  }
  const Matrix& v = state.covariance();
  const double det = v.determinant();
  if (!(det > 0.0)) {
    throw UnphysicalState("covariance is not positive definite");
  }
  const Vector x = point - state.means();
  const double norm = std::pow(2.0 * std::numbers::pi, static_cast<double>(state.modes())) * std::sqrt(det);
  return std::exp(-0.5 * x.dot(v.ldlt().solve(x))) / norm;
}

FidelityResult fidelity_via_bs(const GaussianState& s1, const GaussianState& s2) {
  const GaussianState out = mixed_output(s1, s2);
  const double value = 2.0 * std::numbers::pi * gaussian_wigner(out, Vector::Zero(2));
  return {value, FidelityRoute::beam_splitter_w0, overlap_only(s1, s2)};
}

GaussianState fidelity_output(const GaussianState& s1, const GaussianState& s2) {
  const GaussianState out = mixed_output(s1, s2);
  const Matrix& v = out.covariance();
  // R(phi)^T V R(phi) has off-diagonal sin(2 phi) (a - d) / 2 + cos(2 phi) b.
  const double phi = 0.5 * std::atan2(-2.0 * v(0, 1), v(0, 0) - v(1, 1));
  return apply(rotate(1, 0, phi), out);
}

HomodyneMoments diagonalized_output_moments(const GaussianState& s1, const GaussianState& s2) {
  const GaussianState shifted = fidelity_output(s1, s2);
  return {shifted.means()(0), shifted.means()(1), std::sqrt(shifted.covariance()(0, 0)),
          std::sqrt(shifted.covariance()(1, 1))};
}

FidelityResult fidelity_homodyne_expression(const HomodyneMoments& m) {
  if (!(m.delta_q > 0.0) || !(m.delta_p > 0.0)) {
    throw std::invalid_argument("homodyne standard deviations must be positive");
  }
  const double exponent = m.mean_q * m.mean_q / (m.delta_q * m.delta_q) + m.mean_p * m.mean_p / (m.delta_p * m.delta_p);
  return {std::exp(-0.5 * exponent) / (m.delta_q * m.delta_p), FidelityRoute::homodyne_expression, false};
}

PurityResult purity(const GaussianState& state) {
  const double det = state.covariance().determinant();
  if (!(det > 0.0)) {
    throw UnphysicalState("covariance determinant is not positive");
  }
  const double p = 1.0 / std::sqrt(det);
  return {p, 1.0 - p, det - 1.0};
}

MixednessSeparability mixedness_separability(const StandardFormParams& params) {
  MixednessSeparability out{};
  const GaussianState whole = from_standard_form(params);
  const GaussianState local(Eigen::Vector2d(params.n1, params.n2).asDiagonal().toDenseMatrix());
  const double enlarged = (params.n1 + std::abs(params.c1)) * (params.n2 + std::abs(params.c2));
  out.rhs = 2.0 * std::abs(params.c1 * params.c2);
  out.precondition_met = validate_physical(whole).physical && enlarged >= 1.0 - kTolBoundary;
  if (!out.precondition_met) {
    return out;
  }
  out.whole = purity(whole);
  out.mode1 = purity(local);
  out.mode2 = out.mode1;
  out.lhs_quadratic = out.whole.mixedness_quadratic - out.mode1.mixedness_quadratic - out.mode2.mixedness_quadratic;
  out.lhs_linear = out.whole.mixedness - out.mode1.mixedness - out.mode2.mixedness;
  out.separable = out.lhs_quadratic >= out.rhs - kTolBoundary;
  out.separable_linear = out.lhs_linear >= out.rhs - kTolBoundary;
  return out;
}

}  // namespace cvg
