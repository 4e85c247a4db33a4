#include "nmsqueeze/wigner.hpp"

#include <cmath>
#include <numbers>

#include "nmsqueeze/errors.hpp"
#include "nmsqueeze/quadrature.hpp"

namespace nmsqueeze {
namespace {

using cplx = std::complex<double>;

void require_dimension(const PhasePoint& point, int n) {
  if (point.n() != n) {
    throw InvalidArgument("phase point has " + std::to_string(point.n()) + " modes, expected " +
                          std::to_string(n));
  }
}

double inv_pi_power(int n) { return std::pow(std::numbers::inv_pi, n); }

// Product-rule sum of exp(-x^T P x) over a whitened n-dimensional Gauss-Hermite grid,
// with the integrand supplied through `weighted` (x -> value / weight).
template <typename Integrand>
double whitened_product_sum(const Matrix& precision, const GaussHermiteRule& rule, Integrand integrand) {
  const auto n = precision.rows();
  const Eigen::LLT<Matrix> llt(precision);
  if (llt.info() != Eigen::Success) throw NumericalFailure("precision matrix is not positive definite");
  // x = L^{-T} y maps the quadratic form to |y|^2.
  const Matrix lower = llt.matrixL();
  const Matrix back = lower.transpose().triangularView<Eigen::Upper>().solve(Matrix::Identity(n, n));
  const double jacobian = 1.0 / lower.diagonal().prod();

  const int order = static_cast<int>(rule.nodes.size());
  std::vector<int> index(n, 0);
  Vector y(n);
  long double total = 0.0L;
  while (true) {
    double weight = 1.0;
    double radius2 = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      y(i) = rule.nodes[index[i]];
      weight *= rule.weights[index[i]];
      radius2 += y(i) * y(i);
    }
    const Vector x = back * y;
    total += static_cast<long double>(weight * integrand(x) * std::exp(radius2));

    Eigen::Index d = 0;
    while (d < n && ++index[d] == order) index[d++] = 0;
    if (d == n) break;
  }
  return static_cast<double>(total) * jacobian;
}

}  // namespace

PhasePoint::PhasePoint(Vector q, Vector p) : q_(std::move(q)), p_(std::move(p)) {
  if (q_.size() != p_.size()) throw InvalidArgument("q and p must have the same length");
}

PhasePoint PhasePoint::origin(int n) { return {Vector::Zero(n), Vector::Zero(n)}; }

cplx PhasePoint::alpha(int i) const { return cplx(q_(i), p_(i)) / std::numbers::sqrt2; }

std::vector<cplx> PhasePoint::alphas() const {
  std::vector<cplx> out(n());
  for (int i = 0; i < n(); ++i) out[i] = alpha(i);
  return out;
}

WignerGaussian wigner_state(const SqueezeParams& params) {
  WignerGaussian state;
  state.n = params.n();
  state.precision_p = symmetric_gram(params.n(), params.lambda());
  state.precision_q = symmetric_gram(params.n(), -params.lambda());
  state.norm_const = inv_pi_power(params.n());
  return state;
}

double eval(const WignerGaussian& state, const PhasePoint& point) {
  require_dimension(point, state.n);
  const double exponent = point.q().dot(state.precision_q * point.q()) +
                          point.p().dot(state.precision_p * point.p());
  return state.norm_const * std::exp(-exponent);
}

double closed_form_n2(const PhasePoint& point, double lambda) {
  require_dimension(point, 2);
  const auto a = point.alphas();
  const double cross = (std::conj(a[0]) * std::conj(a[1]) + a[0] * a[1]).real();
  const double modulus = std::norm(a[0]) + std::norm(a[1]);
  return inv_pi_power(2) *
         std::exp(-2.0 * cross * std::sinh(2.0 * lambda) - 2.0 * modulus * std::cosh(2.0 * lambda));
}

double closed_form_n3(const PhasePoint& point, double lambda) {
  require_dimension(point, 3);
  const auto a = point.alphas();
  const double ch = std::cosh(lambda), ch2 = std::cosh(2.0 * lambda);
  const double sh = std::sinh(lambda), sh2 = std::sinh(2.0 * lambda);

  double modulus = 0.0;
  cplx squares = 0.0;
  for (const auto& ai : a) {
    modulus += std::norm(ai);
    squares += ai * ai;
  }
  cplx pairs = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      pairs += (ch2 - ch) * a[i] * std::conj(a[j]) + (sh + sh2) * a[i] * a[j];
    }
  }
  // "+ c.c." completes the whole braced group.
  const cplx braced = -(1.0 / 3.0) * (sh2 - 2.0 * sh) * squares - (2.0 / 3.0) * pairs;
  const double exponent = -(2.0 / 3.0) * (ch2 + 2.0 * ch) * modulus + 2.0 * braced.real();
  return inv_pi_power(3) * std::exp(exponent);
}

double closed_form_n4(const PhasePoint& point, double lambda) {
  require_dimension(point, 4);
  const auto a = point.alphas();
  double modulus = 0.0;
  for (const auto& ai : a) modulus += std::norm(ai);
  const cplx m = a[0] * std::conj(a[2]) + a[1] * std::conj(a[3]);
  const cplx r = a[0] * a[1] + a[0] * a[3] + a[1] * a[2] + a[2] * a[3];
  const double th = std::tanh(lambda);
  const double ch = std::cosh(lambda);
  const double bracket = modulus + 2.0 * m.real() * th * th + 2.0 * r.real() * th;
  return inv_pi_power(4) * std::exp(-2.0 * ch * ch * bracket);
}

double normalization(const WignerGaussian& state, int quadrature_order) {
  if (quadrature_order < 8) {
    throw InvalidArgument("quadrature order must be >= 8, got " + std::to_string(quadrature_order));
  }
  if (std::pow(quadrature_order + 2.0, state.n) > 5e7) {
    throw InvalidArgument("product quadrature with " + std::to_string(quadrature_order + 2) +
                          "^" + std::to_string(state.n) + " nodes is too large");
  }
  const int n = state.n;
  const Vector zero = Vector::Zero(n);
  const double peak = eval(state, PhasePoint::origin(n));

  // W(q, p) W(0, 0) = W(q, 0) W(0, p): the q and p integrals separate.
  auto integrate = [&](int order) {
    const auto rule = gauss_hermite(order);
    const double q_part = whitened_product_sum(state.precision_q, rule, [&](const Vector& q) {
      return eval(state, PhasePoint(q, zero));
    });
    const double p_part = whitened_product_sum(state.precision_p, rule, [&](const Vector& p) {
      return eval(state, PhasePoint(zero, p));
    });
    return q_part * p_part / peak;
  };

  const double coarse = integrate(quadrature_order);
  const double fine = integrate(quadrature_order + 2);
  if (std::abs(coarse - fine) > 1e-6) {
    throw NumericalFailure("quadrature order " + std::to_string(quadrature_order) +
                           " too small: successive orders differ by " + std::to_string(std::abs(coarse - fine)));
  }
  return coarse;
}

Axis Axis::parse(const std::string& text, int n) {
  if (text.size() < 2 || (text[0] != 'q' && text[0] != 'p')) {
    throw InvalidArgument("axis must look like q1 or p3, got '" + text + "'");
  }
  int mode = 0;
  try {
    std::size_t used = 0;
    mode = std::stoi(text.substr(1), &used);
    if (used != text.size() - 1) throw std::invalid_argument(text);
  } catch (const std::exception&) {
    throw InvalidArgument("axis must look like q1 or p3, got '" + text + "'");
  }
  if (mode < 1 || mode > n) {
    throw InvalidArgument("axis '" + text + "' out of range for n = " + std::to_string(n));
  }
  return {text[0] == 'q' ? Kind::q : Kind::p, mode - 1};
}

std::string Axis::name() const { return (kind == Kind::q ? "q" : "p") + std::to_string(mode + 1); }

GridSlice slice_grid(const WignerGaussian& state, const GridSliceSpec& spec) {
  const int n = state.n;
  for (const Axis* axis : {&spec.axis_a, &spec.axis_b}) {
    if (axis->mode < 0 || axis->mode >= n) {
      throw InvalidArgument("axis " + axis->name() + " out of range for n = " + std::to_string(n));
    }
  }
  if (spec.axis_a.flat_index(n) == spec.axis_b.flat_index(n)) {
    throw InvalidArgument("slice axes must differ, both are " + spec.axis_a.name());
  }
  for (const GridRange* range : {&spec.range_a, &spec.range_b}) {
    if (range->steps < 2) throw InvalidArgument("grid needs at least 2 steps per axis");
    if (!std::isfinite(range->lo) || !std::isfinite(range->hi)) throw InvalidArgument("grid range must be finite");
  }
  if (!spec.fixed_values.empty() && static_cast<int>(spec.fixed_values.size()) != 2 * n) {
    throw InvalidArgument("fixed values need 2n = " + std::to_string(2 * n) + " entries");
  }

  Vector flat = Vector::Zero(2 * n);
  for (std::size_t i = 0; i < spec.fixed_values.size(); ++i) flat(i) = spec.fixed_values[i];
  const int ia = spec.axis_a.flat_index(n);
  const int ib = spec.axis_b.flat_index(n);

  GridSlice out;
  out.spec = spec;
  out.rows.reserve(static_cast<std::size_t>(spec.range_a.steps) * spec.range_b.steps);
  for (int i = 0; i < spec.range_a.steps; ++i) {
    for (int j = 0; j < spec.range_b.steps; ++j) {
      const double a = spec.range_a.node(i);
      const double b = spec.range_b.node(j);
      flat(ia) = a;
      flat(ib) = b;
      out.rows.push_back({a, b, eval(state, PhasePoint(flat.head(n), flat.tail(n)))});
    }
  }
  return out;
}

}  // namespace nmsqueeze
