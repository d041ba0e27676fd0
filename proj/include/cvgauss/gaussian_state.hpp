#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "cvgauss/errors.hpp"

namespace cvg {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Quadratures are q = a + a^dag, p = i(a^dag - a); the vacuum has unit
// variance in each. Coordinates are ordered (q1, p1, q2, p2, ...).

/// Relative to max(1, max |V|).
inline constexpr double kTolSymmetry = 1e-10;
inline constexpr double kTolPhysical = 1e-9;
inline constexpr double kTolForm = 1e-9;
inline constexpr std::size_t kMaxModes = 3;

/// An n-mode Gaussian state: covariance matrix V and mean vector d.
///
/// Construction checks dimensions and symmetry only. Physicality is a separate
/// question answered by validate_physical(), so that unphysical candidates
/// (e.g. partially transposed covariances) can still be represented.
class GaussianState {
 public:
  GaussianState(Matrix covariance, Vector means);
  explicit GaussianState(Matrix covariance);

  std::size_t modes() const { return static_cast<std::size_t>(covariance_.rows() / 2); }
  const Matrix& covariance() const { return covariance_; }
  const Vector& means() const { return means_; }

  /// 2x2 block of V coupling modes a and b (local block when a == b).
  Eigen::Matrix2d block(std::size_t a, std::size_t b) const;

 private:
  Matrix covariance_;
  Vector means_;
};

/// Block-diagonal symplectic form, one [[0, 1], [-1, 0]] block per mode.
Matrix symplectic_form(std::size_t modes);

GaussianState vacuum(std::size_t modes);

/// Product of thermal states with V = diag(n1, n1, n2, n2, ...). Each
/// occupation must be >= 1 (1 is the vacuum).
GaussianState thermal_state(std::span<const double> occupations);

/// exp(-u V u^T / 2 + i d u^T), with u conjugate to (q1, p1, ...).
std::complex<double> char_fn(const GaussianState& state, const Vector& u);

struct PhysicalityReport {
  bool physical;
  double min_eigenvalue;  // of the Hermitian matrix V + i Omega
};

PhysicalityReport validate_physical(const GaussianState& state);

/// Throws UnphysicalState when validate_physical() fails.
void require_physical(const GaussianState& state);

/// Reduced state on the listed modes, in the listed order.
GaussianState reduce(const GaussianState& state, std::span<const std::size_t> modes);

/// Product state a (x) b.
GaussianState direct_sum(const GaussianState& a, const GaussianState& b);

/// Parameters of the symmetric standard form
///
///     | n1  0  c1  0 |
///     |  0 n2   0 c2 |
///     | c1  0  n1  0 |
///     |  0 c2   0 n2 |
///
/// where n1 or n2 may lie below the vacuum value 1.
struct StandardFormParams {
  double n1 = 1.0;
  double n2 = 1.0;
  double c1 = 0.0;
  double c2 = 0.0;

  /// Joint q variance: n1 - |c1|.
  double delta1() const;
  /// Joint p variance: n2 - |c2|.
  double delta2() const;
};

/// Throws FormMismatch if V deviates from the standard-form pattern by more
/// than kTolForm anywhere, and DimensionMismatch for non-two-mode states.
StandardFormParams to_standard_form_params(const GaussianState& state);

GaussianState from_standard_form(const StandardFormParams& params);

}  // namespace cvg
