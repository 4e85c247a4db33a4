#include "nmsqueeze/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

#include "nmsqueeze/errors.hpp"

namespace nmsqueeze {

GaussHermiteRule gauss_hermite(int order) {
  if (order < 1) throw InvalidArgument("quadrature order must be positive, got " + std::to_string(order));

  // Jacobi matrix of the monic Hermite recurrence: off-diagonal sqrt(k/2).
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(order, order);
  for (int k = 1; k < order; ++k) {
    jacobi(k, k - 1) = jacobi(k - 1, k) = std::sqrt(0.5 * k);
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
  if (solver.info() != Eigen::Success) throw NumericalFailure("Gauss-Hermite eigensolver failed");

  GaussHermiteRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  const double mu0 = std::sqrt(std::numbers::pi);
  for (int i = 0; i < order; ++i) {
    rule.nodes[i] = solver.eigenvalues()(i);
    const double v0 = solver.eigenvectors()(0, i);
    rule.weights[i] = mu0 * v0 * v0;
  }
  return rule;
}

}  // namespace nmsqueeze
