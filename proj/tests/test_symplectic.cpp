#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"

#include "cvgauss/fock_oracle.hpp"
#include "cvgauss/gaussian_state.hpp"
#include "cvgauss/symplectic.hpp"
#include "support/random_states.hpp"

using namespace cvg;

namespace {

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

Vector phys_eigenvalues(const GaussianState& state) {
  const Eigen::MatrixXcd h = state.covariance().cast<std::complex<double>>() +
                             std::complex<double>(0.0, 1.0) * symplectic_form(state.modes()).cast<std::complex<double>>();
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(h).eigenvalues();
}

}  // namespace

TEST_CASE("building blocks at zero parameter are the identity") {
  const Matrix id2 = Matrix::Identity(2, 2);
  const Matrix id4 = Matrix::Identity(4, 4);
  CHECK(squeeze_single(1, 0, 0.0).matrix() == id2);
  CHECK(rotate(1, 0, 0.0).matrix() == id2);
  CHECK(two_mode_squeeze(2, 0, 1, 0.0).matrix() == id4);
  CHECK(beam_split(2, 0, 1, 0.0).matrix() == id4);
  CHECK(SymplecticMap::identity(3).matrix() == Matrix::Identity(6, 6));
}

TEST_CASE("squeeze_single") {
  const auto squeezed = apply(squeeze_single(1, 0, 0.5), vacuum(1));
  CHECK(squeezed.covariance()(0, 0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
  CHECK(squeezed.covariance()(1, 1) == doctest::Approx(std::exp(1.0)).epsilon(1e-14));
  CHECK(squeezed.covariance()(0, 1) == 0.0);
  CHECK(squeezed.covariance().determinant() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(squeeze_single(1, 0, 0.5).is_symplectic());

  const auto embedded = squeeze_single(3, 2, 0.4).matrix();
  CHECK(embedded.topLeftCorner(4, 4) == Matrix::Identity(4, 4));
  CHECK(embedded(4, 4) == doctest::Approx(std::exp(-0.4)));

  CHECK_THROWS_AS(squeeze_single(1, 1, 0.5), std::out_of_range);
  CHECK_THROWS_AS(squeeze_single(1, 0, 10.5), std::invalid_argument);
}

TEST_CASE("rotate") {
  const double s = 0.3;
  const auto state = apply(rotate(1, 0, std::numbers::pi / 4), apply(squeeze_single(1, 0, s), vacuum(1)));
  Matrix expected(2, 2);
  expected << std::cosh(2 * s), -std::sinh(2 * s), -std::sinh(2 * s), std::cosh(2 * s);
  CHECK(max_abs(state.covariance() - expected) < 1e-14);

  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const double a = testing::uniform(rng, -4.0, 4.0);
    const double b = testing::uniform(rng, -4.0, 4.0);
    const auto product = compose(rotate(1, 0, a), rotate(1, 0, b));
    CHECK(max_abs(product.matrix() - rotate(1, 0, a + b).matrix()) < 1e-12);
  }
  CHECK_THROWS_AS(rotate(2, 2, 0.1), std::out_of_range);
}

TEST_CASE("two_mode_squeeze") {
  const double s = 0.5;
  const auto state = apply(two_mode_squeeze(2, 0, 1, s), vacuum(2));
  const Matrix& v = state.covariance();
  CHECK(v(0, 0) == doctest::Approx(1.54308).epsilon(1e-5));
  CHECK(max_abs(v.block(0, 0, 2, 2) - std::cosh(2 * s) * Matrix::Identity(2, 2)) < 1e-14);
  CHECK(max_abs(v.block(2, 2, 2, 2) - std::cosh(2 * s) * Matrix::Identity(2, 2)) < 1e-14);
  CHECK(v(0, 2) == doctest::Approx(std::sinh(2 * s)).epsilon(1e-14));
  CHECK(v(1, 3) == doctest::Approx(-std::sinh(2 * s)).epsilon(1e-14));
  CHECK(v(0, 3) == 0.0);
  for (double t : {0.0, 0.1, 0.7, 1.5, 3.0}) {
    CHECK(apply(two_mode_squeeze(2, 0, 1, t), vacuum(2)).covariance().determinant() ==
          doctest::Approx(1.0).epsilon(1e-9));
  }
  CHECK_THROWS_AS(two_mode_squeeze(2, 1, 1, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(two_mode_squeeze(2, 0, 2, 0.5), std::out_of_range);
  CHECK_THROWS_AS(two_mode_squeeze(2, 0, 1, -11.0), std::invalid_argument);
}

TEST_CASE("beam_split") {
  const auto out = apply(beam_split(2, 0, 1, std::numbers::pi / 4), vacuum(2));
  CHECK(max_abs(out.covariance() - Matrix::Identity(4, 4)) < 1e-15);
  CHECK_THROWS_AS(beam_split(2, 0, 0, 0.3), std::invalid_argument);

  SUBCASE("output marginal characteristic function factorizes") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
      const auto s1 = testing::random_physical_state(1, rng);
      const auto s2 = testing::random_physical_state(1, rng);
      const double theta = testing::uniform(rng, -3.0, 3.0);
      const auto mixed = apply(beam_split(2, 0, 1, theta), direct_sum(s1, s2));
      const std::vector<std::size_t> first{0};
      const auto out1 = reduce(mixed, first);
      const Eigen::Vector2d u(testing::uniform(rng, -1, 1), testing::uniform(rng, -1, 1));
      const double r = std::sin(theta);
      const double t = std::cos(theta);
      const auto lhs = char_fn(out1, u);
      const auto rhs = char_fn(s1, Eigen::Vector2d(t * u)) * char_fn(s2, Eigen::Vector2d(r * u));
      CHECK(std::abs(lhs - rhs) < 1e-12);
    }
  }
}

TEST_CASE("displacement") {
  const auto coherent = apply(Displacement{0, 2.0, 0.0}, vacuum(1));
  CHECK(coherent.means() == Eigen::Vector2d(2.0, 0.0));
  CHECK(coherent.covariance() == Matrix::Identity(2, 2));
  const auto twice = apply(Displacement{1, 0.5, -1.0}, apply(Displacement{1, 0.5, 0.0}, vacuum(2)));
  CHECK(twice.means() == Eigen::Vector4d(0, 0, 1.0, -1.0));
  CHECK_THROWS_AS(apply(Displacement{2, 1.0, 0.0}, vacuum(2)), std::out_of_range);
}

TEST_CASE("apply and compose") {
  const auto state = apply(two_mode_squeeze(2, 0, 1, 0.3), vacuum(2));
  const auto same = apply(SymplecticMap::identity(2), state);
  CHECK(same.covariance() == state.covariance());
  CHECK_THROWS_AS(apply(SymplecticMap::identity(1), state), DimensionMismatch);
  CHECK_THROWS_AS(SymplecticMap(2.0 * Matrix::Identity(2, 2)), std::invalid_argument);

  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    const auto a = testing::random_symplectic(2, rng);
    const auto b = testing::random_symplectic(2, rng);
    const auto c = testing::random_symplectic(2, rng);
    const auto x = testing::random_physical_state(2, rng);
    const auto stepwise = apply(a, apply(b, x));
    const auto composed = apply(compose(a, b), x);
    CHECK(max_abs(stepwise.covariance() - composed.covariance()) <= 1e-12 * max_abs(stepwise.covariance()));
    CHECK((stepwise.means() - composed.means()).cwiseAbs().maxCoeff() <= 1e-12 * (1 + stepwise.means().norm()));
    const auto left = compose(compose(a, b), c).matrix();
    const auto right = compose(a, compose(b, c)).matrix();
    CHECK(max_abs(left - right) <= 1e-12 * max_abs(left));
  }
}

TEST_CASE("symplectic apply matches the Fock oracle for TMSV s = 0.4") {
  const Recipe recipe{{1.0, 1.0}, {TwoModeSqueeze{0, 1, 0.4}}};
  const auto rho = oracle_build(recipe, 40);
  const auto closed = apply(two_mode_squeeze(2, 0, 1, 0.4), vacuum(2));
  CHECK(max_abs(oracle_variance(rho).covariance() - closed.covariance()) < 1e-6);
}

TEST_CASE("apply_loss") {
  const auto state = apply(two_mode_squeeze(2, 0, 1, 0.5), apply(Displacement{0, 1.0, 2.0}, vacuum(2)));
  const auto kept = apply_loss(state, 1.0);
  CHECK(kept.covariance() == state.covariance());
  CHECK(kept.means() == state.means());
  const auto lost = apply_loss(state, 0.0);
  CHECK(lost.covariance() == Matrix::Identity(4, 4));
  CHECK(lost.means().isZero());
  CHECK_THROWS_AS(apply_loss(state, 1.1), std::invalid_argument);
  CHECK_THROWS_AS(apply_loss(state, -0.1), std::invalid_argument);

  SUBCASE("TMSV standard-form parameters") {
    const double s = 0.5;
    const auto tmsv = apply(two_mode_squeeze(2, 0, 1, s), vacuum(2));
    for (double eta : {0.2, 0.6, 0.9}) {
      const auto p = to_standard_form_params(apply_loss(tmsv, eta));
      CHECK(p.n1 == doctest::Approx(eta * std::cosh(2 * s) + 1 - eta).epsilon(1e-14));
      CHECK(std::abs(p.c1) == doctest::Approx(eta * std::sinh(2 * s)).epsilon(1e-14));
      CHECK(p.delta1() == doctest::Approx(eta * std::exp(-2 * s) + 1 - eta).epsilon(1e-13));
      CHECK(p.delta2() == doctest::Approx(eta * std::exp(-2 * s) + 1 - eta).epsilon(1e-13));
    }
  }
}

TEST_CASE("constructor outputs are symplectic") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    const double x = testing::uniform(rng, -3.0, 3.0);
    CHECK(squeeze_single(3, trial % 3, x).is_symplectic());
    CHECK(rotate(3, trial % 3, x).is_symplectic());
    CHECK(two_mode_squeeze(3, trial % 3, (trial + 1) % 3, x).is_symplectic());
    CHECK(beam_split(3, trial % 3, (trial + 2) % 3, x).is_symplectic());
    CHECK(testing::random_symplectic(3, rng).is_symplectic());
  }
}

TEST_CASE("apply preserves physicality and determinant") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t modes = 1 + static_cast<std::size_t>(trial % 3);
    const auto state = testing::random_physical_state(modes, rng);
    const auto out = apply(testing::random_symplectic(modes, rng, 0.4), state);
    CHECK(validate_physical(out).physical);
    const double before = state.covariance().determinant();
    CHECK(std::abs(out.covariance().determinant() - before) <= 1e-9 * before);
  }
}

// lambda(eta) = min eig(eta (V + i Omega) + (1 - eta)(I + i Omega)) is concave
// with lambda(0) = 0, so lambda(eta) / eta grows as eta decreases.
TEST_CASE("apply_loss preserves physicality monotonically") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t modes = 1 + static_cast<std::size_t>(trial % 3);
    const auto state = testing::random_physical_state(modes, rng);
    const double at_one = phys_eigenvalues(state).minCoeff();
    double previous = -1.0;
    for (int k = 20; k >= 1; --k) {
      const double eta = k / 20.0;
      const auto degraded = apply_loss(state, eta);
      const double ratio = phys_eigenvalues(degraded).minCoeff() / eta;
      CHECK(validate_physical(degraded).physical);
      CHECK(ratio >= previous - 1e-9);
      CHECK(ratio >= at_one - 1e-9);
      previous = ratio;
    }
    CHECK(std::abs(phys_eigenvalues(apply_loss(state, 0.0)).minCoeff()) < 1e-12);
  }
}
