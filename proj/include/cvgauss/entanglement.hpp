#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "cvgauss/gaussian_state.hpp"

namespace cvg {

/// Tolerance on symplectic eigenvalues and on delta1 * delta2 at the
/// separability boundary. Boundary states count as separable.
inline constexpr double kTolBoundary = 1e-9;

/// Covariance of the partial transpose on mode 2: p2 -> -p2.
Matrix partial_transpose_V(const Matrix& v);

/// Symplectic eigenvalues (moduli of the eigenvalues of i Omega V, each
/// reported once), ascending. V must be symmetric positive definite.
std::vector<double> symplectic_spectrum(const Matrix& v);

/// max{0, 1 / (delta1 delta2) - 1}. Throws UnphysicalState if a delta is <= 0.
double negativity_lemma1(const StandardFormParams& params);

struct SymplecticNegativity {
  double value;                  // Tr|rho^T2| - 1
  double trace_norm;             // product of 1/nu over partial-transpose eigenvalues nu < 1 - kTolBoundary
  std::vector<double> nu_tilde;  // partial-transpose symplectic spectrum
};

/// Negativity of a general physical two-mode state from the symplectic
/// spectrum of its partial transpose.
SymplecticNegativity negativity_sympl(const GaussianState& state);

/// PPT test: every partial-transpose symplectic eigenvalue >= 1 - kTolBoundary.
bool separable_ppt(const GaussianState& state);
/// Standard-form shortcut: delta1 * delta2 >= 1 - kTolBoundary.
bool separable_ppt(const StandardFormParams& params);

/// EPR-type inference criterion
/// delta1 delta2 < n1 n2 / ((n1 + |c1|)(n2 + |c2|)).
bool reid_drummond(const StandardFormParams& params);

/// S: separable. E: entangled and detected at any nonzero efficiency
/// (delta1 + delta2 < 2). E_prime: entangled but lost below a critical efficiency.
enum class Region { S, E, E_prime };

std::string_view to_string(Region region);

Region classify_region(double delta1, double delta2);
Region classify_region(const StandardFormParams& params);

/// Efficiency above which loss-degraded joint variances still show
/// delta1' delta2' < 1: 0 in region E, (2 - d1 - d2) / ((1 - d1)(1 - d2)) in
/// region E_prime. Throws std::invalid_argument for separable inputs.
double critical_efficiency(double delta1, double delta2);
double critical_efficiency(const StandardFormParams& params);

struct EntanglementReport {
  double e_sympl;
  double trace_norm;
  std::vector<double> nu_tilde;
  bool separable;
  // Present only for states in standard form.
  std::optional<StandardFormParams> standard_form;
  std::optional<double> e_lemma1;
  std::optional<Region> region;
  std::optional<double> eta_critical;  // empty for separable states
  std::optional<bool> reid_drummond;
};

EntanglementReport analyze_entanglement(const GaussianState& state);

}  // namespace cvg
