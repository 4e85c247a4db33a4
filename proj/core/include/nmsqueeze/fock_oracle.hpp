#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "nmsqueeze/squeeze_algebra.hpp"

/// Brute-force truncated Fock-space realization of V, independent of the
/// circulant analysis.
namespace nmsqueeze::fock {

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr std::size_t kDefaultMaxDim = 4096;
inline constexpr double kDefaultLeakageThreshold = 1e-6;

struct Ladder {
  Matrix a;     // a|m> = sqrt(m)|m-1>
  Matrix adag;  // transpose of a (truncated at d-1)
  Matrix q() const;         // (a + a^+)/sqrt(2)
  ComplexMatrix p() const;  // (a - a^+)/(sqrt(2) i)
};

Ladder ladder(int cutoff);

/// |m_1 ... m_n> with m_i < cutoff. Little-endian: mode 1 varies fastest.
class FockBasis {
 public:
  FockBasis(int n, int cutoff, std::size_t max_dim = kDefaultMaxDim);

  int n() const { return n_; }
  int cutoff() const { return cutoff_; }
  std::size_t dim() const { return dim_; }

  std::size_t index(const std::vector<int>& occupation) const;
  std::vector<int> occupation(std::size_t index) const;
  /// Index of the state with one photon in modes i and j (two in i when i == j).
  std::size_t pair_index(int i, int j) const;

 private:
  int n_;
  int cutoff_;
  std::size_t dim_;
};

/// K = lambda sum_i Q_i P_{i+1 mod n} on the truncated space.
struct GeneratorMatrix {
  FockBasis basis;
  ComplexMatrix entries;
};

GeneratorMatrix build_generator(const SqueezeParams& params, int cutoff,
                                std::size_t max_dim = kDefaultMaxDim);

struct FockStateVector {
  FockBasis basis;
  ComplexVector amplitudes;
  /// Population of basis states with some mode at the top level cutoff - 1.
  double leakage = 0.0;
};

enum class Propagator {
  /// exp(iK/s)^s applied to the vector by truncated Taylor series; matvecs only.
  taylor,
  /// U diag(e^{i k}) U^+ from a Hermitian eigendecomposition; O(dim^3).
  eigen,
};

/// exp(iK) applied to an arbitrary state on the generator's basis.
ComplexVector propagate(const GeneratorMatrix& generator, const ComplexVector& state,
                        Propagator propagator = Propagator::taylor);

/// Population of basis states with some mode at the top level.
double top_level_population(const FockBasis& basis, const ComplexVector& state);

/// exp(iK)|0...0>.
FockStateVector apply_squeeze(const GeneratorMatrix& generator, Propagator propagator = Propagator::taylor);

struct PairAmplitudes {
  std::complex<double> vac;
  ComplexMatrix pairs;  // <1_i 1_j|psi> off the diagonal, sqrt(2) <2_i|psi> on it
};

PairAmplitudes extract_pair_amplitudes(const FockStateVector& psi);

struct OracleVariances {
  QuadratureVariances variances;
  double mean_x1 = 0.0;
  double mean_x2 = 0.0;
};

/// <X1^2>, <X2^2> with truncated Q_i, P_i. Throws NumericalFailure when the
/// leakage exceeds `leakage_threshold` or a mean is not ~0.
OracleVariances oracle_variances(const FockStateVector& psi,
                                 double leakage_threshold = kDefaultLeakageThreshold);

}  // namespace nmsqueeze::fock
