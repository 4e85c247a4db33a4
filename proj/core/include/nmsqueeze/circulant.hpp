#pragma once

#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace nmsqueeze {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Largest |lambda| (or |s|) accepted anywhere. The largest eigenvalue of
/// A + A^T is 2, so exponents stay within 2 * kMaxSqueeze = 700.
inline constexpr double kMaxSqueeze = 350.0;

/// Throws OverflowGuard when |value| > kMaxSqueeze.
void check_overflow_guard(double value, const char* what);

/// The cyclic shift A with A(i, i+1 mod n) = 1.
class ShiftMatrix {
 public:
  explicit ShiftMatrix(int n);

  int n() const { return n_; }
  const Matrix& dense() const { return entries_; }
  Matrix transposed() const { return entries_.transpose(); }

 private:
  int n_;
  Matrix entries_;
};

ShiftMatrix cyclic_shift(int n);

/// A matrix function of the cyclic shift, stored by its values on the
/// eigenvalues omega^k = exp(2 pi i k / n), k = 0..n-1, of A. The matching
/// eigenvalue of A^T is conj(omega^k).
class CirculantSpectrum {
 public:
  using ScalarMap = std::function<std::complex<double>(std::complex<double>)>;

  /// Samples `map` at every eigenvalue of A.
  CirculantSpectrum(int n, const ScalarMap& map);

  int n() const { return n_; }
  double eigenangle(int k) const;
  const std::vector<std::complex<double>>& values() const { return values_; }

  /// First row c_m, m = 0..n-1, of the reconstructed circulant: entry (i, j)
  /// equals c_{(j - i) mod n}. Throws NumericalFailure if the imaginary
  /// residue exceeds 1e-13 relative to max(1, max |f_k|).
  Vector first_row() const;

  /// Dense real reconstruction.
  Matrix dense() const;

  /// Product of the eigenvalue images (real part).
  double determinant() const;

 private:
  int n_;
  std::vector<std::complex<double>> values_;
};

/// Circulant with the given first row (entry (i, j) = row[(j - i) mod n]).
Matrix circulant_from_row(const Vector& row);

/// e^{sA}, or e^{sA^T} when `transposed`, from the spectrum.
Matrix shift_exponential(int n, double s, bool transposed = false);

/// G = e^{-lambda (A + A^T)}: symmetric, positive definite, det G = 1.
Matrix symmetric_gram(int n, double lambda);

/// e^M by scaling and squaring of a truncated Taylor series. Cross-check
/// oracle for the spectral path; not used in production code.
Matrix series_expm(const Matrix& m, double tol = 1e-15);

struct CayleyHamiltonN4 {
  double c0;
  double c1;
  double c2;
  double c3;
  Matrix lambda_matrix;  // c0 I + c1 A^T + c2 (A^T)^2 + c3 (A^T)^3 = e^{-lambda A^T}
};

/// Closed-form e^{-lambda A^T} for n = 4 using A^4 = I.
CayleyHamiltonN4 cayley_hamilton_n4(double lambda);

}  // namespace nmsqueeze
