#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"

#include "cvgauss/entanglement.hpp"
#include "cvgauss/fock_oracle.hpp"
#include "cvgauss/measures.hpp"
#include "support/random_states.hpp"

using namespace cvg;

namespace {

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

std::vector<Recipe> corpus() {
  std::vector<Recipe> out{
      Recipe{{1.0}, {}},
      Recipe{{3.0}, {}},
      Recipe{{1.0}, {Squeeze{0, 0.5}}},
      Recipe{{1.0}, {Squeeze{0, 0.3}, Rotate{0, std::numbers::pi / 4}}},
      Recipe{{1.5}, {Squeeze{0, -0.2}, Rotate{0, 1.1}, Displacement{0, 0.8, -0.6}}},
      Recipe{{1.0, 1.0}, {TwoModeSqueeze{0, 1, 0.4}}},
      Recipe{{2.0, 2.0}, {}},
      Recipe{{1.2, 1.0}, {Squeeze{0, 0.25}, BeamSplit{0, 1, 0.6}, Displacement{1, 0.3, 0.2}}},
      Recipe{{1.0, 1.3}, {TwoModeSqueeze{0, 1, 0.3}, Rotate{1, 0.4}, BeamSplit{0, 1, -0.3}}},
  };
  return out;
}

}  // namespace

TEST_CASE("oracle_build basics") {
  const auto vac = oracle_build(Recipe{{1.0}, {}}, 20);
  CHECK(vac.cutoff == 20);
  CHECK(std::abs(vac.rho(0, 0) - 1.0) < 1e-15);
  CHECK(vac.rho.cwiseAbs().sum() == doctest::Approx(1.0));

  const auto th = oracle_build(Recipe{{3.0}, {}}, 60);
  for (int k = 0; k < 10; ++k) {
    CHECK(std::abs(th.rho(k + 1, k + 1) / th.rho(k, k) - 0.5) < 1e-12);
  }
  CHECK(std::abs(th.rho(0, 1)) == 0.0);
  CHECK(th.trace_deficit >= 0.0);
  CHECK(th.trace_deficit < 1e-12);

  const double s = 0.4;
  const auto tm = oracle_build(Recipe{{1.0, 1.0}, {TwoModeSqueeze{0, 1, s}}}, 30);
  for (std::size_t n = 0; n < 8; ++n) {
    const double weight = std::pow(std::tanh(s), 2.0 * n) / std::pow(std::cosh(s), 2);
    const auto idx = static_cast<Eigen::Index>(n * tm.cutoff + n);
    CHECK(std::abs(tm.rho(idx, idx).real() - weight) < 1e-10);
  }
  CHECK((tm.rho - tm.rho.adjoint()).cwiseAbs().maxCoeff() < 1e-10);

  CHECK_THROWS_AS(oracle_build(Recipe{{1.0}, {Squeeze{0, 1.5}}}, 20), CutoffTooSmall);
  CHECK_THROWS_AS(oracle_build(Recipe{{1.0, 1.0, 1.0}, {}}, 10), std::invalid_argument);
  CHECK_THROWS_AS(oracle_build(Recipe{{1.0}, {}}, 81), std::invalid_argument);
  CHECK_THROWS_AS(oracle_build(Recipe{{1.0, 1.0}, {}}, 46), std::invalid_argument);
}

TEST_CASE("auto cutoff policy") {
  const auto small = oracle_build(Recipe{{1.0}, {}});
  CHECK(small.cutoff == kInitialCutoff);
  const auto bigger = oracle_build(Recipe{{1.0}, {Squeeze{0, 1.0}}});
  CHECK(bigger.cutoff > kInitialCutoff);
  CHECK(bigger.tail_mass < kMaxTailMass);
  CHECK_THROWS_AS(oracle_build(Recipe{{1.0}, {Squeeze{0, 3.0}}}), CutoffTooSmall);
}

TEST_CASE("oracle_negativity") {
  const std::vector<double> occ{1.5, 2.0};
  CHECK(oracle_negativity(oracle_build(Recipe{occ, {Squeeze{0, 0.2}, Rotate{1, 0.3}}}, 30)) < 1e-8);
  const auto half = oracle_build(Recipe{{1.0, 1.0}, {TwoModeSqueeze{0, 1, 0.5}}}, 40);
  CHECK(std::abs(oracle_negativity(half) - (std::exp(1.0) - 1)) < 1e-3);
  const auto fifth = oracle_build(Recipe{{1.0, 1.0}, {TwoModeSqueeze{0, 1, 0.2}}}, 40);
  CHECK(std::abs(oracle_negativity(fifth) - 0.49182) < 1e-4);
  CHECK_THROWS_AS(oracle_negativity(oracle_build(Recipe{{1.0}, {}}, 10)), DimensionMismatch);
}

TEST_CASE("oracle_fidelity") {
  const auto vac = oracle_build(Recipe{{1.0}, {}}, 40);
  const auto coh = oracle_build(Recipe{{1.0}, {Displacement{0, 2.0, 0.0}}}, 40);
  const auto vc = oracle_fidelity(vac, coh);
  CHECK(std::abs(vc.value - std::exp(-1.0)) < 1e-6);
  CHECK_FALSE(vc.is_overlap);
  CHECK(std::abs(oracle_fidelity(coh, coh).value - 1.0) < 1e-8);
  const auto th = oracle_build(Recipe{{3.0}, {}}, 40);
  CHECK(std::abs(oracle_fidelity(vac, th).value - 0.5) < 1e-6);
  const auto th2 = oracle_build(Recipe{{2.0}, {}}, 40);
  CHECK(oracle_fidelity(th, th2).is_overlap);
  const auto padded = oracle_build(Recipe{{1.0}, {}}, 20);
  CHECK(std::abs(oracle_fidelity(padded, th).value - 0.5) < 1e-6);
}

TEST_CASE("oracle_purity and oracle_variance") {
  const auto pure = oracle_build(Recipe{{1.0}, {Squeeze{0, 0.4}, Displacement{0, 1.0, 0.5}}}, 40);
  CHECK(std::abs(oracle_purity(pure) - 1.0) < 1e-8);
  CHECK(std::abs(oracle_purity(oracle_build(Recipe{{3.0}, {}}, 60)) - 1.0 / 3.0) < 1e-6);
  const auto tm = oracle_build(Recipe{{1.0, 1.0}, {TwoModeSqueeze{0, 1, 0.4}}}, 40);
  CHECK(max_abs(oracle_variance(tm).covariance() - build_state(Recipe{{1.0, 1.0}, {TwoModeSqueeze{0, 1, 0.4}}}).covariance()) < 1e-6);
}

TEST_CASE("recipe corpus agrees with the covariance route") {
  for (const auto& recipe : corpus()) {
    const auto rho = oracle_build(recipe);
    const auto state = build_state(recipe);
    CHECK(std::abs(oracle_purity(rho) - purity(state).purity) <= 1e-5);
    const auto moments = oracle_variance(rho);
    CHECK(max_abs(moments.covariance() - state.covariance()) <= 1e-5);
    CHECK((moments.means() - state.means()).cwiseAbs().maxCoeff() <= 1e-5);
    CHECK((rho.rho - rho.rho.adjoint()).cwiseAbs().maxCoeff() <= 1e-10);
    CHECK(std::abs(rho.rho.trace().real() + rho.trace_deficit - 1.0) <= 1e-12);
    CHECK(rho.trace_deficit < 1e-8);
  }
}

TEST_CASE("partial transpose commutes with state construction") {
  for (const auto& recipe : corpus()) {
    if (recipe.modes() != 2) continue;
    const auto rho = oracle_build(recipe);
    const auto transposed = oracle_variance(oracle_partial_transpose(rho));
    const Matrix expected = partial_transpose_V(oracle_variance(rho).covariance());
    CHECK(max_abs(transposed.covariance() - expected) <= 1e-6);
  }
}

TEST_CASE("oracle negativity agrees with the symplectic route") {
  std::mt19937_64 rng(101);
  for (double s : {0.1, 0.3, 0.6}) {
    const Recipe recipe{{1.0, 1.0}, {TwoModeSqueeze{0, 1, s}}};
    const double oracle = oracle_negativity(oracle_build(recipe));
    const double closed = negativity_sympl(build_state(recipe)).value;
    CHECK(std::abs(oracle - closed) <= 1e-3 * closed);
  }
  for (int trial = 0; trial < 3; ++trial) {
    const std::vector<double> occ{testing::uniform(rng, 1.0, 1.5), testing::uniform(rng, 1.0, 1.5)};
    const Recipe recipe{occ, {TwoModeSqueeze{0, 1, testing::uniform(rng, 0.2, 0.5)}, Rotate{0, testing::uniform(rng, 0, 3)}}};
    const auto rho = oracle_build(recipe);
    const double oracle = oracle_negativity(rho);
    const double closed = negativity_sympl(build_state(recipe)).value;
    CHECK(std::abs(oracle - closed) <= 1e-3 * std::max(closed, 1e-3));
  }
}
