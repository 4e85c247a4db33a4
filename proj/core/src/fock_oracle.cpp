#include "nmsqueeze/fock_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SparseCore>

#include "nmsqueeze/errors.hpp"

namespace nmsqueeze::fock {
namespace {

using cplx = std::complex<double>;

// Applies a single-mode operator `op` (cutoff x cutoff) on `mode` to `state`.
template <typename Op>
ComplexVector apply_on_mode(const FockBasis& basis, const Op& op, int mode, const ComplexVector& state) {
  const std::size_t stride = static_cast<std::size_t>(std::pow(basis.cutoff(), mode));
  const int d = basis.cutoff();
  ComplexVector out = ComplexVector::Zero(state.size());
  for (std::size_t col = 0; col < basis.dim(); ++col) {
    if (state(col) == cplx(0.0)) continue;
    const int m = static_cast<int>((col / stride) % d);
    const std::size_t base = col - static_cast<std::size_t>(m) * stride;
    for (int r = 0; r < d; ++r) {
      const cplx element = op(r, m);
      if (element != cplx(0.0)) out(base + r * stride) += element * state(col);
    }
  }
  return out;
}

}  // namespace

Matrix Ladder::q() const { return (a + adag) / std::numbers::sqrt2; }

ComplexMatrix Ladder::p() const {
  return (a - adag).cast<cplx>() / cplx(0.0, std::numbers::sqrt2);
}

Ladder ladder(int cutoff) {
  if (cutoff < 2) throw InvalidArgument("Fock cutoff must be >= 2, got " + std::to_string(cutoff));
  Ladder out{Matrix::Zero(cutoff, cutoff), Matrix::Zero(cutoff, cutoff)};
  for (int m = 1; m < cutoff; ++m) out.a(m - 1, m) = std::sqrt(static_cast<double>(m));
  out.adag = out.a.transpose();
  return out;
}

FockBasis::FockBasis(int n, int cutoff, std::size_t max_dim) : n_(n), cutoff_(cutoff), dim_(1) {
  if (n < 2) throw InvalidArgument("mode count must be >= 2, got " + std::to_string(n));
  if (cutoff < 2) throw InvalidArgument("Fock cutoff must be >= 2, got " + std::to_string(cutoff));
  for (int i = 0; i < n; ++i) {
    dim_ *= static_cast<std::size_t>(cutoff);
    if (dim_ > max_dim) {
      throw InvalidArgument("Fock dimension " + std::to_string(cutoff) + "^" + std::to_string(n) +
                            " exceeds the budget of " + std::to_string(max_dim));
    }
  }
}

std::size_t FockBasis::index(const std::vector<int>& occupation) const {
  if (static_cast<int>(occupation.size()) != n_) throw InvalidArgument("occupation length must equal n");
  std::size_t idx = 0;
  for (int i = n_ - 1; i >= 0; --i) {
    if (occupation[i] < 0 || occupation[i] >= cutoff_) throw InvalidArgument("occupation outside cutoff");
    idx = idx * cutoff_ + occupation[i];
  }
  return idx;
}

std::vector<int> FockBasis::occupation(std::size_t index) const {
  std::vector<int> out(n_);
  for (int i = 0; i < n_; ++i) {
    out[i] = static_cast<int>(index % cutoff_);
    index /= cutoff_;
  }
  return out;
}

std::size_t FockBasis::pair_index(int i, int j) const {
  std::vector<int> occ(n_, 0);
  ++occ[i];
  ++occ[j];
  return index(occ);
}

GeneratorMatrix build_generator(const SqueezeParams& params, int cutoff, std::size_t max_dim) {
  FockBasis basis(params.n(), cutoff, max_dim);
  const auto ops = ladder(cutoff);
  const Matrix q = ops.q();
  const ComplexMatrix p = ops.p();
  const int n = params.n();
  const auto dim = basis.dim();

  ComplexMatrix k = ComplexMatrix::Zero(dim, dim);
  for (int i = 0; i < n; ++i) {
    const int j = (i + 1) % n;  // A_{i, i+1} = 1
    for (std::size_t col = 0; col < dim; ++col) {
      const auto occ = basis.occupation(col);
      auto target = occ;
      for (int ri = 0; ri < cutoff; ++ri) {
        const double qe = q(ri, occ[i]);
        if (qe == 0.0) continue;
        target[i] = ri;
        for (int rj = 0; rj < cutoff; ++rj) {
          const cplx pe = p(rj, occ[j]);
          if (pe == cplx(0.0)) continue;
          target[j] = rj;
          k(basis.index(target), col) += params.lambda() * qe * pe;
        }
        target[j] = occ[j];
      }
    }
  }
  const double asym = (k - k.adjoint()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * std::max(1.0, std::abs(params.lambda()))) {
    throw NumericalFailure("generator is not Hermitian, residue " + std::to_string(asym));
  }
  return {std::move(basis), std::move(k)};
}

ComplexVector propagate(const GeneratorMatrix& generator, const ComplexVector& state, Propagator propagator) {
  if (static_cast<std::size_t>(state.size()) != generator.basis.dim()) {
    throw InvalidArgument("state length does not match the Fock dimension");
  }
  ComplexVector out;
  if (propagator == Propagator::eigen) {
    const Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(generator.entries);
    if (solver.info() != Eigen::Success) throw NumericalFailure("Hermitian eigensolver failed on the generator");
    const auto& vecs = solver.eigenvectors();
    ComplexVector coeff = vecs.adjoint() * state;
    for (Eigen::Index i = 0; i < coeff.size(); ++i) coeff(i) *= std::exp(cplx(0.0, solver.eigenvalues()(i)));
    out = vecs * coeff;
  } else {
    const double norm1 = generator.entries.cwiseAbs().colwise().sum().maxCoeff();
    const int steps = std::max(1, static_cast<int>(std::ceil(norm1 / 0.5)));
    // K has at most 4n nonzeros per column; the sparse view only speeds up the matvec.
    const Eigen::SparseMatrix<cplx> step_generator = (generator.entries * cplx(0.0, 1.0 / steps)).sparseView();
    out = state;
    for (int s = 0; s < steps; ++s) {
      ComplexVector term = out;
      ComplexVector acc = term;
      for (int k = 1; k < 100; ++k) {
        term = (step_generator * term) / static_cast<double>(k);
        acc += term;
        if (term.norm() < 1e-18 * acc.norm()) break;
      }
      out = std::move(acc);
    }
  }
  if (!out.allFinite()) throw NumericalFailure("propagated state has non-finite amplitudes");
  return out;
}

double top_level_population(const FockBasis& basis, const ComplexVector& state) {
  const int top = basis.cutoff() - 1;
  double population = 0.0;
  for (std::size_t idx = 0; idx < basis.dim(); ++idx) {
    for (int m : basis.occupation(idx)) {
      if (m == top) {
        population += std::norm(state(idx));
        break;
      }
    }
  }
  return population;
}

FockStateVector apply_squeeze(const GeneratorMatrix& generator, Propagator propagator) {
  ComplexVector vacuum = ComplexVector::Zero(generator.basis.dim());
  vacuum(0) = 1.0;
  FockStateVector psi{generator.basis, propagate(generator, vacuum, propagator), 0.0};
  psi.leakage = top_level_population(psi.basis, psi.amplitudes);
  return psi;
}

PairAmplitudes extract_pair_amplitudes(const FockStateVector& psi) {
  const int n = psi.basis.n();
  PairAmplitudes out{psi.amplitudes(0), ComplexMatrix::Zero(n, n)};
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const cplx amp = psi.amplitudes(psi.basis.pair_index(i, j));
      out.pairs(i, j) = (i == j) ? std::numbers::sqrt2 * amp : amp;
    }
  }
  return out;
}

OracleVariances oracle_variances(const FockStateVector& psi, double leakage_threshold) {
  if (psi.leakage > leakage_threshold) {
    throw NumericalFailure("truncation leakage " + std::to_string(psi.leakage) + " exceeds " +
                           std::to_string(leakage_threshold) + "; increase the cutoff");
  }
  const auto& basis = psi.basis;
  const auto ops = ladder(basis.cutoff());
  const Matrix q = ops.q();
  const ComplexMatrix p = ops.p();
  const int n = basis.n();
  const double scale = 1.0 / std::sqrt(2.0 * n);

  ComplexVector x1 = ComplexVector::Zero(basis.dim());
  ComplexVector x2 = ComplexVector::Zero(basis.dim());
  for (int i = 0; i < n; ++i) {
    x1 += apply_on_mode(basis, [&](int r, int c) { return cplx(q(r, c)); }, i, psi.amplitudes);
    x2 += apply_on_mode(basis, [&](int r, int c) { return p(r, c); }, i, psi.amplitudes);
  }
  x1 *= scale;
  x2 *= scale;

  OracleVariances out;
  out.mean_x1 = psi.amplitudes.dot(x1).real();
  out.mean_x2 = psi.amplitudes.dot(x2).real();
  if (std::abs(out.mean_x1) > 1e-10 || std::abs(out.mean_x2) > 1e-10) {
    throw NumericalFailure("quadrature means are not zero: " + std::to_string(out.mean_x1) + ", " +
                           std::to_string(out.mean_x2));
  }
  // X Hermitian on the truncated space, so <X^2> = |X psi|^2.
  out.variances.var_x1 = x1.squaredNorm() - out.mean_x1 * out.mean_x1;
  out.variances.var_x2 = x2.squaredNorm() - out.mean_x2 * out.mean_x2;
  return out;
}

}  // namespace nmsqueeze::fock
