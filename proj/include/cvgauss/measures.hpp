#pragma once

#include <optional>

#include "cvgauss/gaussian_state.hpp"

namespace cvg {

enum class FidelityRoute { closed_form, beam_splitter_w0, homodyne_expression };

struct FidelityResult {
  double value;
  FidelityRoute route;
  /// Neither input is pure, so `value` is the overlap Tr(rho1 rho2) rather
  /// than a fidelity with respect to a pure reference.
  bool is_overlap;
};

/// 2 / sqrt(det(V1 + V2)) * exp(-dd (V1 + V2)^-1 dd^T / 2) for single-mode
/// states, dd = d1 - d2.
FidelityResult fidelity_closed_form(const GaussianState& s1, const GaussianState& s2);

/// Mixes the two states on a 50:50 beam splitter (r = -t = 1/sqrt 2) and
/// returns 2 pi W(0) of output mode 1.
FidelityResult fidelity_via_bs(const GaussianState& s1, const GaussianState& s2);

/// First and second moments a homodyne detector reports for one mode whose
/// covariance has been rotated to diagonal form by a phase shifter.
struct HomodyneMoments {
  double mean_q;
  double mean_p;
  double delta_q;  // standard deviation of q
  double delta_p;
};

/// Single-mode field reaching the detector in the fidelity setup: output 1 of
/// the 50:50 mixer, phase shifted so that its covariance is diagonal.
GaussianState fidelity_output(const GaussianState& s1, const GaussianState& s2);

/// Moments of fidelity_output(); exact, no sampling.
HomodyneMoments diagonalized_output_moments(const GaussianState& s1, const GaussianState& s2);

/// F = exp(-(<q>^2 / dq^2 + <p>^2 / dp^2) / 2) / (dq dp).
FidelityResult fidelity_homodyne_expression(const HomodyneMoments& moments);

/// Wigner function of a Gaussian state, normalized over (q, p) coordinates.
double gaussian_wigner(const GaussianState& state, const Vector& point);

struct PurityResult {
  double purity;                // P = 1 / sqrt(det V)
  double mixedness;             // M = 1 - P
  double mixedness_quadratic;   // P^-2 - 1 = det V - 1
};

PurityResult purity(const GaussianState& state);

/// Mixedness form of the standard-form separability test,
/// M12 - M1 - M2 >= 2 |c1 c2|. The verdict uses the quadratic mixedness;
/// the linear (M = 1 - P) variant is carried along for comparison.
struct MixednessSeparability {
  bool precondition_met;          // physical and (n1 + |c1|)(n2 + |c2|) >= 1
  std::optional<bool> separable;  // empty when the precondition fails
  double lhs_quadratic;
  double lhs_linear;
  double rhs;
  bool separable_linear;
  PurityResult whole;
  PurityResult mode1;
  PurityResult mode2;
};

MixednessSeparability mixedness_separability(const StandardFormParams& params);

}  // namespace cvg
