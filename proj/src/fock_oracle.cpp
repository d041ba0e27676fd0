#include "cvgauss/fock_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/Sparse>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

namespace cvg {

namespace {

using Complex = std::complex<double>;
using SparseC = Eigen::SparseMatrix<Complex>;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

SparseC annihilation(std::size_t n) {
  std::vector<Eigen::Triplet<Complex>> t;
  for (std::size_t k = 1; k < n; ++k) {
    t.emplace_back(static_cast<Eigen::Index>(k - 1), static_cast<Eigen::Index>(k), std::sqrt(static_cast<double>(k)));
  }
  SparseC a(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  a.setFromTriplets(t.begin(), t.end());
  return a;
}

SparseC sparse_identity(std::size_t n) {
  SparseC id(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  id.setIdentity();
  return id;
}

// exp(g), computed block by block over the connected components of g's
// sparsity graph. Photon-number-type conservation laws make these blocks
// small for every generator used here.
SparseC block_exp(const SparseC& g) {
  const auto dim = g.rows();
  std::vector<Eigen::Index> parent(static_cast<std::size_t>(dim));
  std::iota(parent.begin(), parent.end(), Eigen::Index{0});
  auto find = [&](Eigen::Index x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  for (Eigen::Index k = 0; k < g.outerSize(); ++k) {
    for (SparseC::InnerIterator it(g, k); it; ++it) {
      if (it.value() != Complex(0.0)) {
        parent[static_cast<std::size_t>(find(it.row()))] = find(it.col());
      }
    }
  }
  std::vector<std::vector<Eigen::Index>> groups(static_cast<std::size_t>(dim));
  for (Eigen::Index i = 0; i < dim; ++i) {
    groups[static_cast<std::size_t>(find(i))].push_back(i);
  }
  std::vector<Eigen::Index> position(static_cast<std::size_t>(dim));
  std::vector<Eigen::Triplet<Complex>> triplets;
  for (const auto& idx : groups) {
    if (idx.empty()) continue;
    const auto k = static_cast<Eigen::Index>(idx.size());
    for (Eigen::Index i = 0; i < k; ++i) {
      position[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])] = i;
    }
    Eigen::MatrixXcd sub = Eigen::MatrixXcd::Zero(k, k);
    for (const Eigen::Index col : idx) {
      for (SparseC::InnerIterator it(g, col); it; ++it) {
        sub(position[static_cast<std::size_t>(it.row())], position[static_cast<std::size_t>(col)]) = it.value();
      }
    }
    const Eigen::MatrixXcd e = sub.exp();
    for (Eigen::Index i = 0; i < k; ++i) {
      for (Eigen::Index j = 0; j < k; ++j) {
        if (e(i, j) != Complex(0.0)) {
          triplets.emplace_back(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)], e(i, j));
        }
      }
    }
  }
  SparseC u(dim, dim);
  u.setFromTriplets(triplets.begin(), triplets.end());
  return u;
}

// Ladder operators on the full recipe space.
struct Ladder {
  std::size_t modes;
  std::size_t cutoff;
  std::vector<SparseC> a;

  Ladder(std::size_t m, std::size_t n) : modes(m), cutoff(n) {
    const SparseC single = annihilation(n);
    if (m == 1) {
      a.push_back(single);
    } else {
      const SparseC id = sparse_identity(n);
      a.push_back(Eigen::kroneckerProduct(single, id).eval());
      a.push_back(Eigen::kroneckerProduct(id, single).eval());
    }
  }

  const SparseC& op(std::size_t mode) const {
    if (mode >= modes) {
      throw std::out_of_range("recipe mode out of range for the oracle");
    }
    return a[mode];
  }
};

// rho -> U rho U^dag for Hermitian rho.
Eigen::MatrixXcd conjugate(const SparseC& u, const Eigen::MatrixXcd& rho) {
  const Eigen::MatrixXcd left = u * rho;
  return u * Eigen::MatrixXcd(left.adjoint());
}

Eigen::MatrixXcd thermal_density(const std::vector<double>& occupations, std::size_t cutoff) {
  // Mean photon number nbar = (n - 1) / 2; weights nbar^k / (nbar + 1)^(k + 1).
  std::vector<Eigen::VectorXd> diag;
  for (const double occ : occupations) {
    if (!(occ >= 1.0)) {
      throw UnphysicalState("thermal occupation below the vacuum value 1");
    }
    const double nbar = 0.5 * (occ - 1.0);
    Eigen::VectorXd w(static_cast<Eigen::Index>(cutoff));
    for (std::size_t k = 0; k < cutoff; ++k) {
      w(static_cast<Eigen::Index>(k)) = std::pow(nbar, static_cast<double>(k)) / std::pow(nbar + 1.0, static_cast<double>(k + 1));
    }
    diag.push_back(w);
  }
  Eigen::VectorXd full = diag[0];
  if (diag.size() == 2) {
    full.resize(static_cast<Eigen::Index>(cutoff * cutoff));
    for (std::size_t i = 0; i < cutoff; ++i) {
      for (std::size_t j = 0; j < cutoff; ++j) {
        full(static_cast<Eigen::Index>(i * cutoff + j)) = diag[0](static_cast<Eigen::Index>(i)) * diag[1](static_cast<Eigen::Index>(j));
      }
    }
  }
  return full.cast<Complex>().asDiagonal();
}

double tail_mass(const Eigen::MatrixXcd& rho, std::size_t modes, std::size_t cutoff) {
  const std::size_t top = cutoff - std::max<std::size_t>(1, cutoff / 10);
  double mass = 0.0;
  for (Eigen::Index i = 0; i < rho.rows(); ++i) {
    const auto k = static_cast<std::size_t>(i);
    const bool in_tail = modes == 1 ? k >= top : (k / cutoff >= top || k % cutoff >= top);
    if (in_tail) {
      mass += rho(i, i).real();
    }
  }
  return mass;
}

// Keeps the levels below `cutoff` of a density built at `work` levels per mode.
Eigen::MatrixXcd project(const Eigen::MatrixXcd& rho, std::size_t modes, std::size_t work, std::size_t cutoff) {
  if (work == cutoff) {
    return rho;
  }
  std::vector<Eigen::Index> keep;
  if (modes == 1) {
    for (std::size_t i = 0; i < cutoff; ++i) keep.push_back(static_cast<Eigen::Index>(i));
  } else {
    for (std::size_t i = 0; i < cutoff; ++i)
      for (std::size_t j = 0; j < cutoff; ++j) keep.push_back(static_cast<Eigen::Index>(i * work + j));
  }
  return rho(keep, keep);
}

}  // namespace

FockDensity oracle_build(const Recipe& recipe, std::size_t cutoff) {
  const std::size_t modes = recipe.modes();
  if (modes != 1 && modes != 2) {
    throw std::invalid_argument("the Fock oracle supports one- and two-mode recipes");
  }
  const std::size_t limit = modes == 1 ? kMaxCutoffSingle : kMaxCutoffPair;
  if (cutoff < 2 || cutoff > limit) {
    throw std::invalid_argument("cutoff " + std::to_string(cutoff) + " outside [2, " + std::to_string(limit) + "]");
  }
  // Evolve with headroom above the cutoff: truncated generators distort the
  // top few levels, and projecting afterwards keeps that out of the result.
  const std::size_t work = std::min(cutoff + cutoff / 2, limit);
  const Ladder ladder(modes, work);
  Eigen::MatrixXcd rho = thermal_density(recipe.occupations, work);

  for (const auto& step : recipe.steps) {
    const SparseC generator = std::visit(
        Overloaded{
            // exp(s (a^2 - a^dag^2) / 2)
            [&](const Squeeze& op) -> SparseC {
              const auto& a = ladder.op(op.mode);
              const SparseC a2 = a * a;
              return (0.5 * op.s) * (a2 - SparseC(a2.adjoint()));
            },
            // exp(i phi a^dag a)
            [&](const Rotate& op) -> SparseC {
              const auto& a = ladder.op(op.mode);
              return Complex(0.0, op.phi) * SparseC(SparseC(a.adjoint()) * a);
            },
            // exp(s (a^dag b^dag - a b))
            [&](const TwoModeSqueeze& op) -> SparseC {
              if (op.mode_a == op.mode_b) throw std::invalid_argument("two-mode squeeze needs distinct modes");
              const SparseC ab = ladder.op(op.mode_a) * ladder.op(op.mode_b);
              return Complex(op.s) * (SparseC(ab.adjoint()) - ab);
            },
            // exp(theta (a^dag b - a b^dag))
            [&](const BeamSplit& op) -> SparseC {
              if (op.mode_a == op.mode_b) throw std::invalid_argument("beam splitter needs distinct modes");
              const auto& a = ladder.op(op.mode_a);
              const auto& b = ladder.op(op.mode_b);
              const SparseC adag_b = SparseC(a.adjoint()) * b;
              return Complex(op.theta) * (adag_b - SparseC(adag_b.adjoint()));
            },
            // exp(alpha a^dag - alpha* a), alpha = (dq + i dp) / 2
            [&](const Displacement& op) -> SparseC {
              const auto& a = ladder.op(op.mode);
              const Complex alpha(0.5 * op.dq, 0.5 * op.dp);
              return alpha * SparseC(a.adjoint()) - std::conj(alpha) * a;
            },
        },
        step);
    rho = conjugate(block_exp(generator), rho);
  }
  rho = project(rho, modes, work, cutoff);

  FockDensity out;
  out.modes = modes;
  out.cutoff = cutoff;
  out.tail_mass = tail_mass(rho, modes, cutoff);
  out.trace_deficit = 1.0 - rho.trace().real();
  out.rho = std::move(rho);
  if (!(out.tail_mass < kMaxTailMass)) {
    throw CutoffTooSmall("tail mass " + std::to_string(out.tail_mass) + " at cutoff " + std::to_string(cutoff));
  }
  if (!(std::abs(out.trace_deficit) <= kMaxTraceDeficit)) {
    throw CutoffTooSmall("trace deficit " + std::to_string(out.trace_deficit) + " at cutoff " + std::to_string(cutoff));
  }
  return out;
}

FockDensity oracle_build(const Recipe& recipe) {
  const std::size_t limit = recipe.modes() == 1 ? kMaxCutoffSingle : kMaxCutoffPair;
  std::size_t cutoff = kInitialCutoff;
  while (true) {
    try {
      return oracle_build(recipe, cutoff);
    } catch (const CutoffTooSmall&) {
      if (cutoff >= limit) throw;
      cutoff = std::min(2 * cutoff, limit);
    }
  }
}

FockDensity oracle_partial_transpose(const FockDensity& rho) {
  if (rho.modes != 2) {
    throw DimensionMismatch("partial transpose needs a two-mode density");
  }
  const auto n = static_cast<Eigen::Index>(rho.cutoff);
  FockDensity out = rho;
  for (Eigen::Index m1 = 0; m1 < n; ++m1) {
    for (Eigen::Index m2 = 0; m2 < n; ++m2) {
      for (Eigen::Index n1 = 0; n1 < n; ++n1) {
        for (Eigen::Index n2 = 0; n2 < n; ++n2) {
          out.rho(m1 * n + m2, n1 * n + n2) = rho.rho(m1 * n + n2, n1 * n + m2);
        }
      }
    }
  }
  return out;
}

double oracle_negativity(const FockDensity& rho) {
  const FockDensity pt = oracle_partial_transpose(rho);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(pt.rho, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigen-solve of the partial transpose failed");
  }
  return solver.eigenvalues().cwiseAbs().sum() - 1.0;
}

double oracle_purity(const FockDensity& rho) {
  // Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
  return rho.rho.squaredNorm();
}

namespace {

// Embeds a truncated density into a larger cutoff (zero padding).
Eigen::MatrixXcd padded(const FockDensity& rho, std::size_t cutoff) {
  if (cutoff == rho.cutoff) {
    return rho.rho;
  }
  const auto n_old = static_cast<Eigen::Index>(rho.cutoff);
  const auto n_new = static_cast<Eigen::Index>(cutoff);
  if (rho.modes == 1) {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n_new, n_new);
    out.topLeftCorner(n_old, n_old) = rho.rho;
    return out;
  }
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n_new * n_new, n_new * n_new);
  for (Eigen::Index i = 0; i < n_old * n_old; ++i) {
    for (Eigen::Index j = 0; j < n_old * n_old; ++j) {
      out((i / n_old) * n_new + i % n_old, (j / n_old) * n_new + j % n_old) = rho.rho(i, j);
    }
  }
  return out;
}

}  // namespace

OracleFidelity oracle_fidelity(const FockDensity& rho1, const FockDensity& rho2) {
  if (rho1.modes != rho2.modes) {
    throw DimensionMismatch("fidelity needs matching mode counts");
  }
  const std::size_t cutoff = std::max(rho1.cutoff, rho2.cutoff);
  const Eigen::MatrixXcd r1 = padded(rho1, cutoff);
  const Eigen::MatrixXcd r2 = padded(rho2, cutoff);
  const double value = r1.cwiseProduct(r2.transpose()).sum().real();
  constexpr double kTolPure = 1e-6;
  const bool overlap = oracle_purity(rho1) < 1.0 - kTolPure && oracle_purity(rho2) < 1.0 - kTolPure;
  return {value, overlap};
}

GaussianState oracle_variance(const FockDensity& rho) {
  const Ladder ladder(rho.modes, rho.cutoff);
  std::vector<SparseC> x;
  for (std::size_t m = 0; m < rho.modes; ++m) {
    const auto& a = ladder.op(m);
    const SparseC adag = a.adjoint();
    x.push_back(a + adag);
    x.push_back(Complex(0.0, 1.0) * (adag - a));
  }
  // Tr(rho X) = sum_(i,j) rho(j, i) X(i, j)
  auto expect = [&](const SparseC& op) {
    Complex sum = 0.0;
    for (Eigen::Index k = 0; k < op.outerSize(); ++k) {
      for (SparseC::InnerIterator it(op, k); it; ++it) {
        sum += rho.rho(it.col(), it.row()) * it.value();
      }
    }
    return sum.real();
  };
  const auto dim = static_cast<Eigen::Index>(x.size());
  Vector d(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    d(i) = expect(x[static_cast<std::size_t>(i)]);
  }
  Matrix v(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = i; j < dim; ++j) {
      const SparseC anti = x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(j)] +
                           x[static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(i)];
      v(i, j) = v(j, i) = 0.5 * expect(anti) - d(i) * d(j);
    }
  }
  return GaussianState(std::move(v), std::move(d));
}

}  // namespace cvg
