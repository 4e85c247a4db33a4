#pragma once

#include <vector>

namespace nmsqueeze {

/// Gauss-Hermite rule for the weight exp(-x^2) on the real line.
struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Golub-Welsch construction; exact for polynomials of degree < 2 * order.
GaussHermiteRule gauss_hermite(int order);

}  // namespace nmsqueeze
