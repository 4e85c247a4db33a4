#include "nmsqueeze/squeeze_algebra.hpp"

#include <cmath>
#include <string>

#include "nmsqueeze/errors.hpp"

namespace nmsqueeze {

SqueezeParams::SqueezeParams(int n, double lambda) : n_(n), lambda_(lambda) {
  if (n < 2) throw InvalidArgument("mode count must be >= 2, got " + std::to_string(n));
  check_overflow_guard(lambda, "lambda");
}

HeisenbergTransform heisenberg_transform(const SqueezeParams& params) {
  return {shift_exponential(params.n(), -params.lambda(), /*transposed=*/true),
          shift_exponential(params.n(), params.lambda(), /*transposed=*/false)};
}

double spectral_det_n(const SqueezeParams& params) {
  const double lambda = params.lambda();
  const CirculantSpectrum spectrum(params.n(), [lambda](std::complex<double> z) {
    return std::complex<double>(0.5 * (1.0 + std::exp(-2.0 * lambda * z.real())), 0.0);
  });
  return spectrum.determinant();
}

NormalOrderedForm normal_ordered_form(const SqueezeParams& params) {
  const int n = params.n();
  const Matrix identity = Matrix::Identity(n, n);
  const Matrix lambda_q = shift_exponential(n, -params.lambda(), /*transposed=*/true);
  const Matrix gram = symmetric_gram(n, params.lambda());

  NormalOrderedForm out;
  out.n_matrix = 0.5 * (identity + gram);
  const Eigen::LLT<Matrix> llt(out.n_matrix);
  if (llt.info() != Eigen::Success) {
    throw NumericalFailure("N = (I + G)/2 is not positive definite");
  }
  out.n_inverse = llt.solve(identity);
  out.n_inverse = 0.5 * (out.n_inverse + out.n_inverse.transpose());

  out.det_n = spectral_det_n(params);
  out.prefactor = 1.0 / std::sqrt(out.det_n);

  out.e = lambda_q * out.n_inverse - identity;
  out.f = lambda_q * out.n_inverse * lambda_q.transpose() - identity;
  out.f = 0.5 * (out.f + out.f.transpose());
  out.d = out.n_inverse - identity;
  return out;
}

SqueezedVacuum squeezed_vacuum(const SqueezeParams& params) {
  auto form = normal_ordered_form(params);
  return {form.prefactor, std::move(form.f)};
}

double entry_sum(const Matrix& m) {
  long double acc = 0.0L;
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) acc += m(i, j);
  }
  return static_cast<double>(acc);
}

GramEntrySums gram_entry_sum(const SqueezeParams& params) {
  return {entry_sum(symmetric_gram(params.n(), params.lambda())),
          entry_sum(symmetric_gram(params.n(), -params.lambda()))};
}

QuadratureVariances quadrature_variances(const SqueezeParams& params) {
  const auto sums = gram_entry_sum(params);
  const double scale = 4.0 * params.n();
  return {sums.sum / scale, sums.inverse_sum / scale};
}

EntrySumIdentity entry_sum_power_identity(int n, int l) {
  if (n < 2) throw InvalidArgument("mode count must be >= 2, got " + std::to_string(n));
  if (l < 0 || l > 12) {
    throw InvalidArgument("power l must lie in [0, 12] for exact integer arithmetic, got " +
                          std::to_string(l));
  }
  using IntMatrix = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;
  IntMatrix coupling = IntMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    coupling(i, (i + 1) % n) += 1;
    coupling((i + 1) % n, i) += 1;
  }
  IntMatrix power = IntMatrix::Identity(n, n);
  for (int k = 0; k < l; ++k) power = power * coupling;
  return {power.sum(), (std::int64_t{1} << l) * n};
}

}  // namespace nmsqueeze
