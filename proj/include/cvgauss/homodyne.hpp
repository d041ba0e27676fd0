#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "cvgauss/gaussian_state.hpp"

namespace cvg {

/// One balanced homodyne detector: measures x = q cos(chi) + p sin(chi) on
/// `mode` with detection efficiency `efficiency` in (0, 1].
struct HomodyneSettings {
  std::size_t mode = 0;
  double chi = 0.0;
  double efficiency = 1.0;
};

/// Parallelism knob for the samplers. Output never depends on it.
struct SamplerOptions {
  unsigned threads = 1;
};

/// Outcomes of one measurement run. Joint runs fill both `a` and `b`.
///
/// Shots are drawn in fixed-size chunks; chunk k uses an mt19937_64 seeded
/// from (seed, stream, k) through std::seed_seq, so identical inputs give
/// identical values for any thread count.
struct SampleBatch {
  HomodyneSettings settings_a;
  std::optional<HomodyneSettings> settings_b;
  std::size_t shots = 0;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  std::vector<double> a;
  std::vector<double> b;

  bool joint() const { return settings_b.has_value(); }
};

/// Columns: shot_index,value (single) or shot_index,value_a,value_b (joint).
void write_csv(const SampleBatch& batch, std::ostream& out);

SampleBatch sample_homodyne(const GaussianState& state, const HomodyneSettings& settings, std::size_t shots,
                            std::uint64_t seed, std::uint64_t stream = 0, SamplerOptions options = {});

/// Simultaneous homodyne detection on two different modes. Both detectors must
/// share one efficiency (loss is applied to the whole state).
SampleBatch sample_joint(const GaussianState& state, const HomodyneSettings& settings_a,
                         const HomodyneSettings& settings_b, std::size_t shots, std::uint64_t seed,
                         std::uint64_t stream = 0, SamplerOptions options = {});

struct MomentEstimate {
  double value = 0.0;
  double standard_error = 0.0;
  std::size_t shots = 0;
};

/// Sample mean; SE = s / sqrt(n).
MomentEstimate estimate_mean(std::span<const double> x);
/// Unbiased sample variance; SE = s^2 sqrt(2 / (n - 1)) from Var(x^2) = 2 sigma^4.
MomentEstimate estimate_variance(std::span<const double> x);
/// Sample covariance; SE = sqrt((s_a^2 s_b^2 + s_ab^2) / (n - 1)).
MomentEstimate estimate_covariance(std::span<const double> a, std::span<const double> b);

struct DeltaEstimate {
  MomentEstimate delta1;
  MomentEstimate delta2;
};

/// Joint-quadrature variances from a (q1, q2) batch and a (p1, p2) batch:
/// delta = (v_1 + v_2 - 2 |c|) / 2, i.e. half the variance of x_1 -/+ x_2.
/// Streams 0 and 1 of `seed` are used.
DeltaEstimate estimate_delta(const GaussianState& state, double eta, std::size_t shots, std::uint64_t seed,
                             SamplerOptions options = {});

/// Off-diagonal element V(q, p) of the local covariance block of `mode`.
///
/// The mode is split on a 50:50 beam splitter whose other input is an
/// ancillary vacuum; q on output 1' and p on the ancilla output are measured
/// jointly and the estimate is -2 <q_1' p_3>.
MomentEstimate measure_offdiagonal_local(const GaussianState& state, std::size_t mode, std::size_t shots,
                                         std::uint64_t seed, double eta = 1.0, std::uint64_t stream = 0,
                                         SamplerOptions options = {});

/// Covariance matrix of the ancilla setup: `mode` mixed 50:50 with a vacuum
/// appended as the last mode.
GaussianState split_with_vacuum(const GaussianState& state, std::size_t mode);

struct VarianceEstimate {
  double efficiency = 1.0;
  std::size_t shots_per_setting = 0;
  Matrix covariance;      // what the detectors see: eta V + (1 - eta) I
  Matrix standard_error;  // entrywise
  Vector means;
  Vector means_standard_error;
  // (covariance - (1 - eta) I) / eta, when eta was declared known.
  std::optional<Matrix> inverted;
  std::optional<Matrix> inverted_standard_error;
};

/// Full two-mode covariance from homodyne data: diagonals and means from
/// single-mode runs at chi = 0, pi/2; local off-diagonals from the ancilla
/// scheme; the cross block from joint runs. Result is symmetrized.
VarianceEstimate reconstruct_variance(const GaussianState& state, double eta, std::size_t shots_per_setting,
                                      std::uint64_t seed, bool efficiency_known = true,
                                      SamplerOptions options = {});

struct FidelityEstimate {
  MomentEstimate fidelity;
  MomentEstimate mean_q;
  MomentEstimate mean_p;
  MomentEstimate variance_q;
  MomentEstimate variance_p;
};

/// Simulated fidelity measurement: the two single-mode inputs are mixed 50:50,
/// the output is phase shifted to diagonal form, q and p are sampled on
/// streams 0 and 1, and the moments are plugged into the homodyne fidelity
/// expression. The SE is propagated to first order from the four moment SEs.
FidelityEstimate estimate_fidelity(const GaussianState& s1, const GaussianState& s2, double eta, std::size_t shots,
                                   std::uint64_t seed, SamplerOptions options = {});

}  // namespace cvg
