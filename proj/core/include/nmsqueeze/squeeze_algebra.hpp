#pragma once

#include <cstdint>

#include "nmsqueeze/circulant.hpp"

namespace nmsqueeze {

/// Mode count and squeezing parameter of V = exp[i lambda sum_i Q_i P_{i+1}].
class SqueezeParams {
 public:
  /// Throws InvalidArgument for n < 2 and OverflowGuard for |lambda| > kMaxSqueeze.
  SqueezeParams(int n, double lambda);

  int n() const { return n_; }
  double lambda() const { return lambda_; }

 private:
  int n_;
  double lambda_;
};

/// V^{-1} Q_k V = (q_matrix)_{ki} Q_i and V^{-1} P_k V = (p_matrix)_{ki} P_i.
struct HeisenbergTransform {
  Matrix q_matrix;  // Lambda = e^{-lambda A^T}
  Matrix p_matrix;  // e^{lambda A}
};

HeisenbergTransform heisenberg_transform(const SqueezeParams& params);

/// V = prefactor * exp[(1/2) a^+ F a^+] :exp[a^+ E a]: exp[(1/2) a D a].
struct NormalOrderedForm {
  double prefactor = 1.0;  // (det N)^{-1/2}
  double det_n = 1.0;
  Matrix n_matrix;      // N = (I + Lambda^T Lambda) / 2
  Matrix n_inverse;
  Matrix f;             // Lambda N^{-1} Lambda^T - I
  Matrix e;             // Lambda N^{-1} - I
  Matrix d;             // N^{-1} - I
};

NormalOrderedForm normal_ordered_form(const SqueezeParams& params);

/// V|0> = prefactor * exp[(1/2) a^+ F a^+] |0>.
struct SqueezedVacuum {
  double prefactor = 1.0;
  Matrix f;
};

SqueezedVacuum squeezed_vacuum(const SqueezeParams& params);

/// det N from the spectrum: prod_k (1 + e^{-2 lambda cos theta_k}) / 2.
double spectral_det_n(const SqueezeParams& params);

/// Variances of X1 = sum Q_i / sqrt(2n) and X2 = sum P_i / sqrt(2n) in V|0>.
struct QuadratureVariances {
  double var_x1 = 0.25;
  double var_x2 = 0.25;
  double product() const { return var_x1 * var_x2; }
};

/// Computed from the gram-matrix entry sums, not from the closed form e^{-+2 lambda}/4.
QuadratureVariances quadrature_variances(const SqueezeParams& params);

struct EntrySumIdentity {
  std::int64_t lhs;  // sum_ij [(A + A^T)^l]_ij by integer matrix powers
  std::int64_t rhs;  // 2^l n
};

/// Exact for n >= 2 and 0 <= l <= 12.
EntrySumIdentity entry_sum_power_identity(int n, int l);

struct GramEntrySums {
  double sum;          // sum_ij G_ij, analytically n e^{-2 lambda}
  double inverse_sum;  // sum_ij (G^{-1})_ij, analytically n e^{2 lambda}
};

GramEntrySums gram_entry_sum(const SqueezeParams& params);

/// Sum of all matrix entries with long double accumulation.
double entry_sum(const Matrix& m);

}  // namespace nmsqueeze
