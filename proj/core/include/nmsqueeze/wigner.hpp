#pragma once

#include <complex>
#include <string>
#include <vector>

#include "nmsqueeze/squeeze_algebra.hpp"

namespace nmsqueeze {

/// Phase-space point (q, p) of an n-mode system.
class PhasePoint {
 public:
  PhasePoint(Vector q, Vector p);
  static PhasePoint origin(int n);

  int n() const { return static_cast<int>(q_.size()); }
  const Vector& q() const { return q_; }
  const Vector& p() const { return p_; }

  /// alpha_i = (q_i + i p_i) / sqrt(2)
  std::complex<double> alpha(int i) const;
  std::vector<std::complex<double>> alphas() const;

 private:
  Vector q_;
  Vector p_;
};

/// W(q, p) = pi^{-n} exp[-q^T precision_q q - p^T precision_p p] for V|0>.
struct WignerGaussian {
  int n = 0;
  Matrix precision_q;  // G^{-1} = e^{lambda (A + A^T)}
  Matrix precision_p;  // G = e^{-lambda (A + A^T)}
  double norm_const = 0.0;  // pi^{-n}
};

WignerGaussian wigner_state(const SqueezeParams& params);

double eval(const WignerGaussian& state, const PhasePoint& point);

// Printed closed forms in alpha variables, used as comparators for eval().
double closed_form_n2(const PhasePoint& point, double lambda);
double closed_form_n3(const PhasePoint& point, double lambda);
double closed_form_n4(const PhasePoint& point, double lambda);

/// Integral of W over all 2n coordinates by a whitened Gauss-Hermite product
/// rule. Throws NumericalFailure when orders `order` and `order + 2` differ
/// by more than 1e-6.
double normalization(const WignerGaussian& state, int quadrature_order = 10);

/// Selects one of the 2n coordinates: q_1..q_n then p_1..p_n.
struct Axis {
  enum class Kind { q, p };
  Kind kind = Kind::q;
  int mode = 0;  // zero-based

  /// Parses "q1".."qn" / "p1".."pn" (one-based in text).
  static Axis parse(const std::string& text, int n);
  std::string name() const;
  int flat_index(int n) const { return kind == Kind::q ? mode : n + mode; }
};

struct GridRange {
  double lo = -1.0;
  double hi = 1.0;
  int steps = 2;

  double node(int i) const { return lo + (hi - lo) * static_cast<double>(i) / (steps - 1); }
};

struct GridSliceSpec {
  Axis axis_a;
  Axis axis_b{Axis::Kind::q, 1};
  GridRange range_a;
  GridRange range_b;
  std::vector<double> fixed_values;  // length 2n (q then p); empty means all zero
};

struct GridRow {
  double coord_a;
  double coord_b;
  double w;
};

struct GridSlice {
  GridSliceSpec spec;
  std::vector<GridRow> rows;  // axis_a outer, axis_b inner
};

GridSlice slice_grid(const WignerGaussian& state, const GridSliceSpec& spec);

}  // namespace nmsqueeze
