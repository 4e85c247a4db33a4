#include "nmsqueeze/circulant.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "nmsqueeze/errors.hpp"

namespace nmsqueeze {
namespace {

constexpr double kImagResidueTol = 1e-13;

void require_modes(int n) {
  if (n < 2) {
    throw InvalidArgument("mode count must be >= 2, got " + std::to_string(n));
  }
}

std::complex<long double> unit_root(int n, long long r) {
  const long double angle = 2.0L * std::numbers::pi_v<long double> *
                            static_cast<long double>(r % n) / static_cast<long double>(n);
  return {std::cos(angle), std::sin(angle)};
}

}  // namespace

void check_overflow_guard(double value, const char* what) {
  if (!std::isfinite(value) || std::abs(value) > kMaxSqueeze) {
    throw OverflowGuard(std::string(what) + " = " + std::to_string(value) +
                        " exceeds the overflow guard |" + what + "| <= " +
                        std::to_string(kMaxSqueeze) + " (exponent bound 700)");
  }
}

ShiftMatrix::ShiftMatrix(int n) : n_(n) {
  require_modes(n);
  entries_ = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) entries_(i, (i + 1) % n) = 1.0;
}

ShiftMatrix cyclic_shift(int n) { return ShiftMatrix(n); }

CirculantSpectrum::CirculantSpectrum(int n, const ScalarMap& map) : n_(n) {
  require_modes(n);
  values_.resize(n);
  for (int k = 0; k <= n / 2; ++k) {
    const auto root = unit_root(n, k);
    values_[k] = map({static_cast<double>(root.real()), static_cast<double>(root.imag())});
  }
  // Conjugate partners use the exact conjugate eigenvalue so real maps give real matrices.
  for (int k = n / 2 + 1; k < n; ++k) {
    const auto root = std::conj(unit_root(n, n - k));
    values_[k] = map({static_cast<double>(root.real()), static_cast<double>(root.imag())});
  }
}

double CirculantSpectrum::eigenangle(int k) const {
  return 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n_);
}

Vector CirculantSpectrum::first_row() const {
  double scale = 1.0;
  for (const auto& v : values_) scale = std::max(scale, std::abs(v));

  Vector row(n_);
  for (int m = 0; m < n_; ++m) {
    std::complex<long double> acc = 0.0L;
    for (int k = 0; k < n_; ++k) {
      // c_m = (1/n) sum_k f_k omega^{-k m}
      const auto twiddle = std::conj(unit_root(n_, static_cast<long long>(k) * m));
      acc += std::complex<long double>(values_[k].real(), values_[k].imag()) * twiddle;
    }
    acc /= static_cast<long double>(n_);
    if (std::abs(static_cast<double>(acc.imag())) > kImagResidueTol * scale) {
      throw NumericalFailure("circulant reconstruction left imaginary residue " +
                             std::to_string(static_cast<double>(acc.imag())));
    }
    row(m) = static_cast<double>(acc.real());
  }
  return row;
}

Matrix CirculantSpectrum::dense() const { return circulant_from_row(first_row()); }

double CirculantSpectrum::determinant() const {
  std::complex<long double> det = 1.0L;
  for (const auto& v : values_) det *= std::complex<long double>(v.real(), v.imag());
  return static_cast<double>(det.real());
}

Matrix circulant_from_row(const Vector& row) {
  const auto n = row.size();
  Matrix out(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) out(i, j) = row(((j - i) % n + n) % n);
  }
  return out;
}

Matrix shift_exponential(int n, double s, bool transposed) {
  require_modes(n);
  check_overflow_guard(s, "s");
  const CirculantSpectrum spectrum(n, [s, transposed](std::complex<double> z) {
    return std::exp(s * (transposed ? std::conj(z) : z));
  });
  return spectrum.dense();
}

Matrix symmetric_gram(int n, double lambda) {
  require_modes(n);
  check_overflow_guard(lambda, "lambda");
  const CirculantSpectrum spectrum(n, [lambda](std::complex<double> z) {
    return std::complex<double>(std::exp(-2.0 * lambda * z.real()), 0.0);
  });
  Matrix g = spectrum.dense();
  return 0.5 * (g + g.transpose());
}

Matrix series_expm(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) throw InvalidArgument("series_expm needs a square matrix");
  if (!(tol > 0.0)) throw InvalidArgument("series_expm tolerance must be positive");
  if (!m.allFinite()) throw InvalidArgument("series_expm input has non-finite entries");

  const auto n = m.rows();
  const double norm = m.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const Matrix x = m / std::ldexp(1.0, squarings);

  // Each squaring roughly doubles the absolute error, so the Taylor tail is
  // driven below tol / 2^squarings.
  const double tail_tol = std::max(tol * std::ldexp(1.0, -squarings), 1e-300);
  Matrix term = Matrix::Identity(n, n);
  Matrix sum = term;
  for (int k = 1; k < 200; ++k) {
    term = (term * x) / static_cast<double>(k);
    sum += term;
    // Remaining tail is bounded by |term| * sum_j (1/2)^j = 2 |term| for |x| <= 1/2.
    if (2.0 * term.cwiseAbs().maxCoeff() < tail_tol) break;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  if (!sum.allFinite()) throw NumericalFailure("series_expm overflowed");
  return sum;
}

CayleyHamiltonN4 cayley_hamilton_n4(double lambda) {
  check_overflow_guard(lambda, "lambda");
  CayleyHamiltonN4 out{};
  out.c0 = 0.5 * (std::cosh(lambda) + std::cos(lambda));
  out.c1 = 0.5 * (-std::sinh(lambda) - std::sin(lambda));
  out.c2 = 0.5 * (std::cosh(lambda) - std::cos(lambda));
  out.c3 = 0.5 * (-std::sinh(lambda) + std::sin(lambda));

  const Matrix at = cyclic_shift(4).transposed();
  const Matrix at2 = at * at;
  out.lambda_matrix = out.c0 * Matrix::Identity(4, 4) + out.c1 * at + out.c2 * at2 + out.c3 * at2 * at;
  return out;
}

}  // namespace nmsqueeze
