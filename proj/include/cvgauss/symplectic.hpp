#pragma once

#include <cstddef>

#include "cvgauss/gaussian_state.hpp"

namespace cvg {

/// Linear canonical transformation acting on covariances as V -> M^T V M and
/// on means (row vectors) as d -> d M.
class SymplecticMap {
 public:
  /// Rejects matrices that violate M^T Omega M = Omega beyond a tolerance
  /// scaled by |M|^2.
  explicit SymplecticMap(Matrix m);

  static SymplecticMap identity(std::size_t modes);

  std::size_t modes() const { return static_cast<std::size_t>(m_.rows() / 2); }
  const Matrix& matrix() const { return m_; }

  /// max |M^T Omega M - Omega| <= tol.
  bool is_symplectic(double tol = 1e-10) const;

 private:
  Matrix m_;
};

// Building blocks. `modes` is the total mode count of the space the map acts on.

/// diag(e^-s, e^s) on `mode`; |s| <= 10.
SymplecticMap squeeze_single(std::size_t modes, std::size_t mode, double s);

/// [[cos phi, sin phi], [-sin phi, cos phi]] on `mode`.
SymplecticMap rotate(std::size_t modes, std::size_t mode, double phi);

/// cosh(s) I on the diagonal blocks, sinh(s) sigma_z on the cross blocks; |s| <= 10.
SymplecticMap two_mode_squeeze(std::size_t modes, std::size_t mode_a, std::size_t mode_b, double s);

/// [[t I, -r I], [r I, t I]] with r = sin(theta), t = cos(theta).
SymplecticMap beam_split(std::size_t modes, std::size_t mode_a, std::size_t mode_b, double theta);

/// Map equivalent to applying `inner` first and then `outer`.
SymplecticMap compose(const SymplecticMap& outer, const SymplecticMap& inner);

GaussianState apply(const SymplecticMap& map, const GaussianState& state);

/// Phase-space translation of one mode. Acts on the means only.
struct Displacement {
  std::size_t mode = 0;
  double dq = 0.0;
  double dp = 0.0;
};

GaussianState apply(const Displacement& displacement, const GaussianState& state);

/// Uniform photon loss on every mode (detector efficiency eta):
/// V -> eta V + (1 - eta) I, d -> sqrt(eta) d.
GaussianState apply_loss(const GaussianState& state, double eta);

}  // namespace cvg
