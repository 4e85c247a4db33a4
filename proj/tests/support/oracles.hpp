#pragma once

// Test-only reference computations. Nothing here calls the production
// spectral path; each routine is a direct, slow transcription.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracles {

using Matrix = Eigen::MatrixXd;
using LMatrix = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;

inline Matrix shift_by_hand(int n) {
  Matrix a = Matrix::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) a(i, i + 1) = 1.0;
  a(n - 1, 0) = 1.0;
  return a;
}

/// Plain Taylor series in long double, no scaling. Only for small norms.
inline Matrix naive_taylor_expm(const Matrix& m, int terms = 80) {
  const LMatrix x = m.cast<long double>();
  LMatrix term = LMatrix::Identity(m.rows(), m.cols());
  LMatrix sum = term;
  for (int k = 1; k < terms; ++k) {
    term = (term * x) / static_cast<long double>(k);
    sum += term;
  }
  return sum.cast<double>();
}

inline double brute_entry_sum(const Matrix& m) {
  double s = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) s += m(i, j);
  return s;
}

inline Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// Amplitudes of prefactor * exp[(1/2) a^+ F a^+]|0> on the little-endian
/// basis with `cutoff` levels per mode, from a_k psi = (F a^+)_k psi:
/// sqrt(m_k + 1) psi(m + e_k) = sum_j F_kj sqrt(m_j) psi(m - e_j).
inline Eigen::VectorXd gaussian_fock_amplitudes(double prefactor, const Matrix& f, int cutoff) {
  const int n = static_cast<int>(f.rows());
  std::size_t dim = 1;
  for (int i = 0; i < n; ++i) dim *= cutoff;
  auto decode = [&](std::size_t idx) {
    std::vector<int> m(n);
    for (int i = 0; i < n; ++i) {
      m[i] = static_cast<int>(idx % cutoff);
      idx /= cutoff;
    }
    return m;
  };
  auto encode = [&](const std::vector<int>& m) {
    std::size_t idx = 0;
    for (int i = n - 1; i >= 0; --i) idx = idx * cutoff + m[i];
    return idx;
  };
  std::vector<std::size_t> order(dim);
  for (std::size_t i = 0; i < dim; ++i) order[i] = i;
  auto total = [&](std::size_t idx) {
    int t = 0;
    for (int v : decode(idx)) t += v;
    return t;
  };
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return total(a) < total(b); });

  Eigen::VectorXd psi = Eigen::VectorXd::Zero(dim);
  psi(0) = prefactor;
  for (std::size_t idx : order) {
    if (idx == 0) continue;
    auto m = decode(idx);
    int k = 0;
    while (m[k] == 0) ++k;
    const double mk = m[k];
    --m[k];  // m now plays the role of m' with psi(m' + e_k) = psi(idx)
    double acc = 0.0;
    for (int j = 0; j < n; ++j) {
      if (m[j] == 0 || f(k, j) == 0.0) continue;
      auto lower = m;
      --lower[j];
      acc += f(k, j) * std::sqrt(static_cast<double>(m[j])) * psi(encode(lower));
    }
    psi(idx) = acc / std::sqrt(mk);
  }
  return psi;
}

/// Deterministic generator shared by the property tests.
inline std::mt19937_64& rng() {
  static std::mt19937_64 engine(0x5eed5eedULL);
  return engine;
}

inline double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }
inline int uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng()); }

inline double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace oracles
