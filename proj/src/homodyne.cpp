#include "cvgauss/homodyne.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <thread>

#include "cvgauss/measures.hpp"
#include "cvgauss/symplectic.hpp"

namespace cvg {

namespace {

constexpr std::size_t kChunk = 8192;

std::mt19937_64 chunk_engine(std::uint64_t seed, std::uint64_t stream, std::uint64_t chunk) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32),
                    static_cast<std::uint32_t>(chunk), static_cast<std::uint32_t>(chunk >> 32)};
  return std::mt19937_64(seq);
}

// Calls fill(engine, begin, end) for every chunk, spreading chunks over threads.
template <class Fill>
void for_each_chunk(std::size_t shots, std::uint64_t seed, std::uint64_t stream, unsigned threads, Fill fill) {
  const std::size_t chunks = (shots + kChunk - 1) / kChunk;
  auto worker = [&](std::size_t first, std::size_t step) {
    for (std::size_t c = first; c < chunks; c += step) {
      auto engine = chunk_engine(seed, stream, c);
      fill(engine, c * kChunk, std::min(shots, (c + 1) * kChunk));
    }
  };
  const std::size_t n_threads = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(chunks, 1));
  if (n_threads == 1) {
    worker(0, 1);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(n_threads);
  for (std::size_t t = 0; t < n_threads; ++t) {
    pool.emplace_back(worker, t, n_threads);
  }
}

Vector quadrature_direction(std::size_t modes, const HomodyneSettings& s) {
  if (s.mode >= modes) {
    throw std::out_of_range("homodyne mode out of range");
  }
  Vector u = Vector::Zero(2 * static_cast<Eigen::Index>(modes));
  u(2 * static_cast<Eigen::Index>(s.mode)) = std::cos(s.chi);
  u(2 * static_cast<Eigen::Index>(s.mode) + 1) = std::sin(s.chi);
  return u;
}

void check_efficiency(double eta) {
  if (!(eta > 0.0 && eta <= 1.0)) {
    throw std::invalid_argument("detector efficiency must lie in (0, 1]");
  }
}

void check_shots(std::size_t shots) {
  if (shots == 0) {
    throw std::invalid_argument("shots must be positive");
  }
}

}  // namespace

void write_csv(const SampleBatch& batch, std::ostream& out) {
  const auto old_precision = out.precision(17);
  if (batch.joint()) {
    out << "shot_index,value_a,value_b\n";
    for (std::size_t i = 0; i < batch.a.size(); ++i) {
      out << i << ',' << batch.a[i] << ',' << batch.b[i] << '\n';
    }
  } else {
    out << "shot_index,value\n";
    for (std::size_t i = 0; i < batch.a.size(); ++i) {
      out << i << ',' << batch.a[i] << '\n';
    }
  }
  out.precision(old_precision);
}

SampleBatch sample_homodyne(const GaussianState& state, const HomodyneSettings& settings, std::size_t shots,
                            std::uint64_t seed, std::uint64_t stream, SamplerOptions options) {
  check_shots(shots);
  check_efficiency(settings.efficiency);
  const GaussianState seen = apply_loss(state, settings.efficiency);
  const Vector u = quadrature_direction(seen.modes(), settings);
  const double mean = u.dot(seen.means());
  const double sigma = std::sqrt(u.dot(seen.covariance() * u));

  SampleBatch batch{settings, std::nullopt, shots, seed, stream, std::vector<double>(shots), {}};
  for_each_chunk(shots, seed, stream, options.threads, [&](std::mt19937_64& engine, std::size_t begin, std::size_t end) {
    std::normal_distribution<double> normal;
    for (std::size_t i = begin; i < end; ++i) {
      batch.a[i] = mean + sigma * normal(engine);
    }
  });
  return batch;
}

SampleBatch sample_joint(const GaussianState& state, const HomodyneSettings& settings_a,
                         const HomodyneSettings& settings_b, std::size_t shots, std::uint64_t seed,
                         std::uint64_t stream, SamplerOptions options) {
  check_shots(shots);
  if (settings_a.mode == settings_b.mode) {
    throw std::invalid_argument("joint homodyne needs two different modes (same-mode quadratures do not commute)");
  }
  if (settings_a.efficiency != settings_b.efficiency) {
    throw std::invalid_argument("both detectors must share one efficiency");
  }
  check_efficiency(settings_a.efficiency);
  const GaussianState seen = apply_loss(state, settings_a.efficiency);
  const Vector ua = quadrature_direction(seen.modes(), settings_a);
  const Vector ub = quadrature_direction(seen.modes(), settings_b);
  const double mean_a = ua.dot(seen.means());
  const double mean_b = ub.dot(seen.means());
  const double var_a = ua.dot(seen.covariance() * ua);
  const double var_b = ub.dot(seen.covariance() * ub);
  const double cov = ua.dot(seen.covariance() * ub);
  // 2x2 Cholesky factor.
  const double l11 = std::sqrt(var_a);
  const double l21 = cov / l11;
  const double l22 = std::sqrt(std::max(0.0, var_b - l21 * l21));

  SampleBatch batch{settings_a, settings_b, shots, seed, stream, std::vector<double>(shots), std::vector<double>(shots)};
  for_each_chunk(shots, seed, stream, options.threads, [&](std::mt19937_64& engine, std::size_t begin, std::size_t end) {
    std::normal_distribution<double> normal;
    for (std::size_t i = begin; i < end; ++i) {
      const double z1 = normal(engine);
      const double z2 = normal(engine);
      batch.a[i] = mean_a + l11 * z1;
      batch.b[i] = mean_b + l21 * z1 + l22 * z2;
    }
  });
  return batch;
}

MomentEstimate estimate_mean(std::span<const double> x) {
  const auto n = x.size();
  if (n < 2) {
    throw std::invalid_argument("need at least two samples");
  }
  const auto var = estimate_variance(x);
  double sum = 0.0;
  for (double v : x) sum += v;
  return {sum / static_cast<double>(n), std::sqrt(var.value / static_cast<double>(n)), n};
}

MomentEstimate estimate_variance(std::span<const double> x) {
  return estimate_covariance(x, x);
}

MomentEstimate estimate_covariance(std::span<const double> a, std::span<const double> b) {
  const auto n = a.size();
  if (n < 2 || b.size() != n) {
    throw std::invalid_argument("need two equally long sample arrays with at least two entries");
  }
  const double nd = static_cast<double>(n);
  double mean_a = 0.0;
  double mean_b = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mean_a += a[i];
    mean_b += b[i];
  }
  mean_a /= nd;
  mean_b /= nd;
  double saa = 0.0;
  double sbb = 0.0;
  double sab = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double da = a[i] - mean_a;
    const double db = b[i] - mean_b;
    saa += da * da;
    sbb += db * db;
    sab += da * db;
  }
  saa /= nd - 1.0;
  sbb /= nd - 1.0;
  sab /= nd - 1.0;
  return {sab, std::sqrt((saa * sbb + sab * sab) / (nd - 1.0)), n};
}

namespace {

// Half the variance of a - sign(c) b, which equals (v_a + v_b - 2|c|) / 2.
MomentEstimate joint_variance_estimate(const SampleBatch& batch) {
  const double sign = estimate_covariance(batch.a, batch.b).value >= 0.0 ? 1.0 : -1.0;
  std::vector<double> diff(batch.a.size());
  for (std::size_t i = 0; i < diff.size(); ++i) {
    diff[i] = batch.a[i] - sign * batch.b[i];
  }
  auto v = estimate_variance(diff);
  v.value *= 0.5;
  v.standard_error *= 0.5;
  return v;
}

}  // namespace

DeltaEstimate estimate_delta(const GaussianState& state, double eta, std::size_t shots, std::uint64_t seed,
                             SamplerOptions options) {
  if (state.modes() != 2) {
    throw DimensionMismatch("joint-quadrature variances need a two-mode state");
  }
  constexpr double kHalfPi = 0.5 * std::numbers::pi;
  const auto qq = sample_joint(state, {0, 0.0, eta}, {1, 0.0, eta}, shots, seed, 0, options);
  const auto pp = sample_joint(state, {0, kHalfPi, eta}, {1, kHalfPi, eta}, shots, seed, 1, options);
  return {joint_variance_estimate(qq), joint_variance_estimate(pp)};
}

GaussianState split_with_vacuum(const GaussianState& state, std::size_t mode) {
  if (mode >= state.modes()) {
    throw std::out_of_range("mode index out of range");
  }
  const std::size_t n = state.modes() + 1;
  if (n > kMaxModes) {
    throw std::invalid_argument("no room for the ancilla mode");
  }
  const GaussianState extended = direct_sum(state, vacuum(1));
  return apply(beam_split(n, mode, n - 1, 0.25 * std::numbers::pi), extended);
}

MomentEstimate measure_offdiagonal_local(const GaussianState& state, std::size_t mode, std::size_t shots,
                                         std::uint64_t seed, double eta, std::uint64_t stream,
                                         SamplerOptions options) {
  check_efficiency(eta);
  // Loss on every detector commutes with the split: the ancilla is vacuum.
  const GaussianState split = split_with_vacuum(apply_loss(state, eta), mode);
  const auto batch = sample_joint(split, {mode, 0.0, 1.0}, {split.modes() - 1, 0.5 * std::numbers::pi, 1.0},
                                  shots, seed, stream, options);
  auto cov = estimate_covariance(batch.a, batch.b);
  cov.value *= -2.0;
  cov.standard_error *= 2.0;
  return cov;
}

VarianceEstimate reconstruct_variance(const GaussianState& state, double eta, std::size_t shots_per_setting,
                                      std::uint64_t seed, bool efficiency_known, SamplerOptions options) {
  if (state.modes() != 2) {
    throw DimensionMismatch("variance reconstruction is implemented for two-mode states");
  }
  check_efficiency(eta);
  constexpr double kHalfPi = 0.5 * std::numbers::pi;
  VarianceEstimate out;
  out.efficiency = eta;
  out.shots_per_setting = shots_per_setting;
  out.covariance = Matrix::Zero(4, 4);
  out.standard_error = Matrix::Zero(4, 4);
  out.means = Vector::Zero(4);
  out.means_standard_error = Vector::Zero(4);

  std::uint64_t stream = 0;
  // Diagonals and means.
  for (std::size_t mode = 0; mode < 2; ++mode) {
    for (int quad = 0; quad < 2; ++quad) {
      const auto i = static_cast<Eigen::Index>(2 * mode) + quad;
      const auto batch = sample_homodyne(state, {mode, quad * kHalfPi, eta}, shots_per_setting, seed, stream++, options);
      const auto var = estimate_variance(batch.a);
      const auto mean = estimate_mean(batch.a);
      out.covariance(i, i) = var.value;
      out.standard_error(i, i) = var.standard_error;
      out.means(i) = mean.value;
      out.means_standard_error(i) = mean.standard_error;
    }
  }
  // Local q-p elements via the ancilla split.
  for (std::size_t mode = 0; mode < 2; ++mode) {
    const auto i = static_cast<Eigen::Index>(2 * mode);
    const auto est = measure_offdiagonal_local(state, mode, shots_per_setting, seed, eta, stream++, options);
    out.covariance(i, i + 1) = out.covariance(i + 1, i) = est.value;
    out.standard_error(i, i + 1) = out.standard_error(i + 1, i) = est.standard_error;
  }
  // Cross block: (q1 q2), (p1 p2), (q1 p2), (p1 q2).
  constexpr std::array<std::array<int, 2>, 4> kCross{{{0, 0}, {1, 1}, {0, 1}, {1, 0}}};
  for (const auto& [qa, qb] : kCross) {
    const auto batch = sample_joint(state, {0, qa * kHalfPi, eta}, {1, qb * kHalfPi, eta}, shots_per_setting, seed,
                                    stream++, options);
    const auto est = estimate_covariance(batch.a, batch.b);
    const Eigen::Index i = qa;
    const Eigen::Index j = 2 + qb;
    out.covariance(i, j) = out.covariance(j, i) = est.value;
    out.standard_error(i, j) = out.standard_error(j, i) = est.standard_error;
  }
  if (efficiency_known) {
    out.inverted = ((out.covariance - (1.0 - eta) * Matrix::Identity(4, 4)) / eta).eval();
    out.inverted_standard_error = (out.standard_error / eta).eval();
  }
  return out;
}

FidelityEstimate estimate_fidelity(const GaussianState& s1, const GaussianState& s2, double eta, std::size_t shots,
                                   std::uint64_t seed, SamplerOptions options) {
  const GaussianState out = fidelity_output(s1, s2);
  const auto q = sample_homodyne(out, {0, 0.0, eta}, shots, seed, 0, options);
  const auto p = sample_homodyne(out, {0, 0.5 * std::numbers::pi, eta}, shots, seed, 1, options);
  FidelityEstimate est;
  est.mean_q = estimate_mean(q.a);
  est.mean_p = estimate_mean(p.a);
  est.variance_q = estimate_variance(q.a);
  est.variance_p = estimate_variance(p.a);

  const double mq = est.mean_q.value;
  const double mp = est.mean_p.value;
  const double vq = est.variance_q.value;
  const double vp = est.variance_p.value;
  const double f = fidelity_homodyne_expression({mq, mp, std::sqrt(vq), std::sqrt(vp)}).value;
  // F = (vq vp)^(-1/2) exp(-(mq^2 / vq + mp^2 / vp) / 2)
  const double df_dmq = -f * mq / vq;
  const double df_dmp = -f * mp / vp;
  const double df_dvq = f * (-0.5 / vq + 0.5 * mq * mq / (vq * vq));
  const double df_dvp = f * (-0.5 / vp + 0.5 * mp * mp / (vp * vp));
  const double var = std::pow(df_dmq * est.mean_q.standard_error, 2) + std::pow(df_dmp * est.mean_p.standard_error, 2) +
                     std::pow(df_dvq * est.variance_q.standard_error, 2) +
                     std::pow(df_dvp * est.variance_p.standard_error, 2);
  est.fidelity = {f, std::sqrt(var), shots};
  return est;
}

}  // namespace cvg
