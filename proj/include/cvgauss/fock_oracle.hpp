#pragma once

#include <cstddef>

#include <Eigen/Dense>

#include "cvgauss/gaussian_state.hpp"
#include "cvgauss/recipe.hpp"

namespace cvg {

// Brute-force reference: the same recipes realized as truncated unitaries
// (matrix exponentials of the quadratic generators) acting on Fock-basis
// density matrices. Nothing here uses the covariance formalism.

inline constexpr std::size_t kMaxCutoffSingle = 80;
inline constexpr std::size_t kMaxCutoffPair = 45;
inline constexpr std::size_t kInitialCutoff = 20;
inline constexpr double kMaxTailMass = 1e-6;
inline constexpr double kMaxTraceDeficit = 1e-8;

/// Truncated density matrix. Two-mode basis index is n1 * cutoff + n2.
struct FockDensity {
  std::size_t modes = 1;
  std::size_t cutoff = 0;
  Eigen::MatrixXcd rho;
  /// Population with any mode in the top 10% of its levels.
  double tail_mass = 0.0;
  /// 1 - Tr(rho). Never renormalized away.
  double trace_deficit = 0.0;
};

/// Builds the recipe at a fixed cutoff. The unitaries act on a space with
/// extra headroom (up to the per-mode limit) before projecting down to
/// `cutoff` levels, so trace_deficit includes the discarded population.
/// Throws CutoffTooSmall when
/// tail_mass >= kMaxTailMass or |trace_deficit| > kMaxTraceDeficit.
FockDensity oracle_build(const Recipe& recipe, std::size_t cutoff);

/// Cutoff policy: start at kInitialCutoff and double (up to the per-mode
/// limit) until both checks pass.
FockDensity oracle_build(const Recipe& recipe);

/// Tr|rho^T2| - 1 from the eigenvalues of the partial transpose.
double oracle_negativity(const FockDensity& rho);

/// Partial transpose on mode 2 (index swap n2 <-> m2).
FockDensity oracle_partial_transpose(const FockDensity& rho);

struct OracleFidelity {
  double value;     // Tr(rho1 rho2)
  bool is_overlap;  // neither argument is pure within 1e-6
};

/// Densities built at different cutoffs are compared after zero padding.
OracleFidelity oracle_fidelity(const FockDensity& rho1, const FockDensity& rho2);

/// Tr(rho^2).
double oracle_purity(const FockDensity& rho);

/// Means and symmetrized covariance of q = a + a^dag, p = i(a^dag - a).
GaussianState oracle_variance(const FockDensity& rho);

}  // namespace cvg
