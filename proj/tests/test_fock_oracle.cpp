#include <cmath>

#include <doctest.h>

#include "nmsqueeze/errors.hpp"
#include "nmsqueeze/fock_oracle.hpp"
#include "support/oracles.hpp"

using namespace nmsqueeze;
using namespace nmsqueeze::fock;
using cplx = std::complex<double>;

TEST_SUITE("ladder") {
  TEST_CASE("d=2 single excitation") {
    Matrix expected(2, 2);
    expected << 0, 1, 0, 0;
    CHECK(ladder(2).a == expected);
    CHECK_THROWS_AS(ladder(1), InvalidArgument);
  }

  TEST_CASE("canonical commutator away from the truncation edge") {
    const auto ops = ladder(7);
    const ComplexMatrix q = ops.q().cast<cplx>();
    const ComplexMatrix p = ops.p();
    const ComplexMatrix comm = q * p - p * q;
    for (int m = 0; m < 6; ++m) {
      for (int k = 0; k < 6; ++k) {
        const cplx expected = (m == k) ? cplx(0, 1) : cplx(0, 0);
        CHECK(std::abs(comm(m, k) - expected) < 1e-14);
      }
    }
    CHECK(std::abs(comm(6, 6) - cplx(0, 1)) > 1.0);  // edge artefact
  }

  TEST_CASE("d=5 position matrix is real symmetric tridiagonal") {
    const Matrix q = ladder(5).q();
    CHECK(q == q.transpose());
    for (int m = 0; m < 5; ++m) {
      for (int k = 0; k < 5; ++k) {
        if (k == m + 1) {
          CHECK(q(m, k) == doctest::Approx(std::sqrt((m + 1) / 2.0)));
        } else if (k != m - 1) {
          CHECK(q(m, k) == 0.0);
        }
      }
    }
  }
}

TEST_SUITE("FockBasis") {
  TEST_CASE("little-endian bijection") {
    const FockBasis basis(3, 4);
    CHECK(basis.dim() == 64);
    CHECK(basis.index({1, 0, 0}) == 1);
    CHECK(basis.index({0, 1, 0}) == 4);
    CHECK(basis.index({0, 0, 1}) == 16);
    for (std::size_t i = 0; i < basis.dim(); ++i) CHECK(basis.index(basis.occupation(i)) == i);
    CHECK(basis.pair_index(0, 2) == 17);
    CHECK(basis.pair_index(1, 1) == 8);
  }

  TEST_CASE("memory budget") {
    CHECK_THROWS_AS(FockBasis(4, 9), InvalidArgument);
    CHECK_NOTHROW(FockBasis(4, 9, 10000));
    try {
      build_generator({5, 0.1}, 6);
      FAIL("expected budget error");
    } catch (const InvalidArgument& e) {
      CHECK(std::string(e.what()).find("6^5") != std::string::npos);
    }
  }
}

TEST_SUITE("build_generator") {
  TEST_CASE("lambda = 0 gives the zero matrix") {
    CHECK(build_generator({3, 0.0}, 3).entries.cwiseAbs().maxCoeff() == 0.0);
  }

  TEST_CASE("n=2 equals lambda (Q1 P2 + Q2 P1) by Kronecker products") {
    const int d = 5;
    const double lambda = 0.35;
    const auto ops = ladder(d);
    const ComplexMatrix q = ops.q().cast<cplx>();
    const ComplexMatrix p = ops.p();
    // Little-endian: mode 1 is the fast index, so it is the right Kronecker factor.
    const ComplexMatrix expected = lambda * (oracles::kron(p, q) + oracles::kron(q, p));
    CHECK((build_generator({2, lambda}, d).entries - expected).cwiseAbs().maxCoeff() < 1e-15);
  }

  TEST_CASE("Hermitian for n <= 4, d <= 8") {
    CHECK((build_generator({3, 0.7}, 4).entries - build_generator({3, 0.7}, 4).entries.adjoint())
              .cwiseAbs()
              .maxCoeff() < 1e-13);
    for (auto [n, d] : {std::pair{2, 8}, std::pair{3, 8}, std::pair{4, 6}}) {
      const auto k = build_generator({n, 0.5}, d).entries;
      CHECK((k - k.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_SUITE("apply_squeeze") {
  TEST_CASE("lambda = 0 leaves the vacuum") {
    const auto psi = apply_squeeze(build_generator({3, 0.0}, 3));
    CHECK(std::abs(psi.amplitudes(0) - cplx(1.0)) < 1e-15);
    CHECK(psi.amplitudes.tail(psi.amplitudes.size() - 1).norm() < 1e-15);
  }

  TEST_CASE("n=2, lambda=0.4, d=24: Schmidt ladder") {
    const double lambda = 0.4;
    const auto psi = apply_squeeze(build_generator({2, lambda}, 24));
    for (int m = 0; m <= 12; ++m) {
      const cplx expected = std::pow(-std::tanh(lambda), m) / std::cosh(lambda);
      CHECK(std::abs(psi.amplitudes(psi.basis.index({m, m})) - expected) < 1e-6);
    }
    double off_diagonal = 0.0;
    for (std::size_t i = 0; i < psi.basis.dim(); ++i) {
      const auto occ = psi.basis.occupation(i);
      if (occ[0] != occ[1]) off_diagonal = std::max(off_diagonal, std::abs(psi.amplitudes(i)));
    }
    CHECK(off_diagonal < 1e-12);
  }

  TEST_CASE("n=4, lambda=0.3, d=6: vacuum amplitude sech") {
    const auto psi = apply_squeeze(build_generator({4, 0.3}, 6));
    CHECK(std::abs(psi.amplitudes(0) - cplx(1.0 / std::cosh(0.3))) < 1e-6);
  }

  TEST_CASE("Taylor and eigendecomposition propagators agree") {
    for (auto [n, d, lambda] : {std::tuple{2, 10, 0.6}, std::tuple{3, 5, 0.3}}) {
      const auto k = build_generator({n, lambda}, d);
      const auto taylor = apply_squeeze(k, Propagator::taylor);
      const auto eig = apply_squeeze(k, Propagator::eigen);
      CHECK((taylor.amplitudes - eig.amplitudes).cwiseAbs().maxCoeff() < 1e-12);
    }
  }

  TEST_CASE("property: unitarity on low-lying basis vectors") {
    const auto k = build_generator({3, 0.3}, 7);
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<int> occ = {oracles::uniform_int(0, 2), oracles::uniform_int(0, 2), oracles::uniform_int(0, 2)};
      ComplexVector e = ComplexVector::Zero(k.basis.dim());
      e(k.basis.index(occ)) = 1.0;
      CHECK(std::abs(propagate(k, e).norm() - 1.0) < 1e-10);
    }
  }
}

TEST_SUITE("extract_pair_amplitudes") {
  TEST_CASE("vacuum") {
    const auto amps = extract_pair_amplitudes(apply_squeeze(build_generator({3, 0.0}, 3)));
    CHECK(std::abs(amps.vac - cplx(1.0)) < 1e-15);
    CHECK(amps.pairs.cwiseAbs().maxCoeff() < 1e-15);
  }

  TEST_CASE("n=2, lambda=0.4") {
    const auto amps = extract_pair_amplitudes(apply_squeeze(build_generator({2, 0.4}, 24)));
    CHECK(std::abs(amps.vac - cplx(1.0 / std::cosh(0.4))) < 1e-10);
    CHECK(std::abs(amps.pairs(0, 1) - cplx(-std::tanh(0.4) / std::cosh(0.4))) < 1e-10);
    CHECK(std::abs(amps.pairs(1, 0) - amps.pairs(0, 1)) < 1e-15);
  }

  TEST_CASE("n=3, lambda=0.25, d=8 reproduces F") {
    const SqueezeParams params(3, 0.25);
    const auto amps = extract_pair_amplitudes(apply_squeeze(build_generator(params, 8)));
    const auto vacuum = squeezed_vacuum(params);
    const ComplexMatrix ratio = amps.pairs / amps.vac;
    CHECK((ratio - vacuum.f.cast<cplx>()).cwiseAbs().maxCoeff() < 1e-4);
  }

  TEST_CASE("full state approaches the analytic Gaussian as the cutoff grows") {
    const SqueezeParams params(3, 0.25);
    const auto vacuum = squeezed_vacuum(params);
    double previous = 1.0;
    for (int d : {4, 6, 8, 10}) {
      const auto psi = apply_squeeze(build_generator(params, d));
      const Eigen::VectorXd analytic = oracles::gaussian_fock_amplitudes(vacuum.prefactor, vacuum.f, d);
      const double distance = (psi.amplitudes - analytic.cast<cplx>()).norm();
      CHECK(distance < previous);
      previous = distance;
    }
    CHECK(previous < 1e-6);
  }
}

TEST_SUITE("oracle_variances") {
  TEST_CASE("vacuum") {
    const auto v = oracle_variances(apply_squeeze(build_generator({3, 0.0}, 4)));
    CHECK(v.variances.var_x1 == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(v.variances.var_x2 == doctest::Approx(0.25).epsilon(1e-14));
  }

  TEST_CASE("n=2, lambda=0.4, d=24") {
    const auto v = oracle_variances(apply_squeeze(build_generator({2, 0.4}, 24)));
    CHECK(std::abs(v.variances.var_x1 - std::exp(-0.8) / 4) < 1e-6);
    CHECK(std::abs(v.variances.var_x2 - std::exp(0.8) / 4) < 1e-6);
    CHECK(std::abs(v.mean_x1) < 1e-12);
  }

  TEST_CASE("n=3, lambda=0.25, d=8") {
    const auto v = oracle_variances(apply_squeeze(build_generator({3, 0.25}, 8)));
    CHECK(std::abs(v.variances.var_x1 - std::exp(-0.5) / 4) < 1e-3);
    CHECK(std::abs(v.variances.var_x2 - std::exp(0.5) / 4) < 1e-3);
  }

  TEST_CASE("leakage above threshold advises a larger cutoff") {
    const auto psi = apply_squeeze(build_generator({2, 1.5}, 6));
    CHECK(psi.leakage > 1e-3);
    try {
      oracle_variances(psi);
      FAIL("expected truncation error");
    } catch (const NumericalFailure& e) {
      CHECK(std::string(e.what()).find("cutoff") != std::string::npos);
    }
  }
}
