#include "cvgauss/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace cvg {

namespace {

void require_two_mode(const Matrix& v) {
  if (v.rows() != 4 || v.cols() != 4) {
    throw DimensionMismatch("expected a two-mode (4x4) covariance");
  }
}

}  // namespace

Matrix partial_transpose_V(const Matrix& v) {
  require_two_mode(v);
  Matrix out = v;
  out.row(3) *= -1.0;
  out.col(3) *= -1.0;
  return out;
}

std::vector<double> symplectic_spectrum(const Matrix& v) {
  if (v.rows() != v.cols() || v.rows() % 2 != 0 || v.rows() == 0) {
    throw DimensionMismatch("covariance must be 2n x 2n");
  }
  const auto n = v.rows() / 2;
  Eigen::SelfAdjointEigenSolver<Matrix> root(v);
  if (root.info() != Eigen::Success) {
    throw std::runtime_error("eigen-solve of the covariance did not converge");
  }
  if (root.eigenvalues().minCoeff() <= 0.0) {
    throw UnphysicalState("covariance is not positive definite");
  }
  // V^1/2 Omega V^1/2 is antisymmetric with eigenvalues +-i nu.
  const Matrix sqrt_v = root.operatorSqrt();
  const Matrix k = sqrt_v * symplectic_form(static_cast<std::size_t>(n)) * sqrt_v;
  const Eigen::MatrixXcd h = std::complex<double>(0.0, 1.0) * k.cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("symplectic eigen-solve did not converge");
  }
  // Ascending, so the last n are the positive branch.
  std::vector<double> nu(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    nu[static_cast<std::size_t>(i)] = solver.eigenvalues()(n + i);
  }
  return nu;
}

double negativity_lemma1(const StandardFormParams& params) {
  const double d1 = params.delta1();
  const double d2 = params.delta2();
  if (!(d1 > 0.0) || !(d2 > 0.0)) {
    throw UnphysicalState("joint quadrature variances must be positive");
  }
  return std::max(0.0, 1.0 / (d1 * d2) - 1.0);
}

SymplecticNegativity negativity_sympl(const GaussianState& state) {
  require_two_mode(state.covariance());
  require_physical(state);
  SymplecticNegativity out{};
  out.nu_tilde = symplectic_spectrum(partial_transpose_V(state.covariance()));
  out.trace_norm = 1.0;
  for (const double nu : out.nu_tilde) {
    if (nu < 1.0 - kTolBoundary) {
      out.trace_norm /= nu;
    }
  }
  out.value = out.trace_norm - 1.0;
  return out;
}

bool separable_ppt(const GaussianState& state) {
  const auto neg = negativity_sympl(state);
  return std::ranges::all_of(neg.nu_tilde, [](double nu) { return nu >= 1.0 - kTolBoundary; });
}

bool separable_ppt(const StandardFormParams& params) {
  require_physical(from_standard_form(params));
  return params.delta1() * params.delta2() >= 1.0 - kTolBoundary;
}

bool reid_drummond(const StandardFormParams& p) {
  const double bound = p.n1 * p.n2 / ((p.n1 + std::abs(p.c1)) * (p.n2 + std::abs(p.c2)));
  return p.delta1() * p.delta2() < bound;
}

std::string_view to_string(Region region) {
  switch (region) {
    case Region::S:
      return "S";
    case Region::E:
      return "E";
    case Region::E_prime:
      return "E_prime";
  }
  return "?";
}

Region classify_region(double delta1, double delta2) {
  if (delta1 * delta2 >= 1.0 - kTolBoundary) {
    return Region::S;
  }
  return delta1 + delta2 < 2.0 ? Region::E : Region::E_prime;
}

Region classify_region(const StandardFormParams& params) {
  return classify_region(params.delta1(), params.delta2());
}

double critical_efficiency(double delta1, double delta2) {
  switch (classify_region(delta1, delta2)) {
    case Region::S:
      throw std::invalid_argument("critical efficiency is undefined for separable states");
    case Region::E:
      return 0.0;
    case Region::E_prime:
      break;
  }
  // eta (1 - d1)(1 - d2) + (d1 + d2 - 2) < 0 with (1 - d1)(1 - d2) < 0 here.
  const double eta = (2.0 - delta1 - delta2) / ((1.0 - delta1) * (1.0 - delta2));
  return std::clamp(eta, 0.0, 1.0);
}

double critical_efficiency(const StandardFormParams& params) {
  return critical_efficiency(params.delta1(), params.delta2());
}

EntanglementReport analyze_entanglement(const GaussianState& state) {
  const auto neg = negativity_sympl(state);
  EntanglementReport report{};
  report.e_sympl = neg.value;
  report.trace_norm = neg.trace_norm;
  report.nu_tilde = neg.nu_tilde;
  report.separable = std::ranges::all_of(neg.nu_tilde, [](double nu) { return nu >= 1.0 - kTolBoundary; });
  try {
    report.standard_form = to_standard_form_params(state);
  } catch (const FormMismatch&) {
    return report;
  }
  const auto& p = *report.standard_form;
  report.e_lemma1 = negativity_lemma1(p);
  report.region = classify_region(p);
  if (*report.region != Region::S) {
    report.eta_critical = critical_efficiency(p);
  }
  report.reid_drummond = reid_drummond(p);
  return report;
}

}  // namespace cvg
