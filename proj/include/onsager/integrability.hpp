// Copyright 2026 The Onsager Algebra Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ONSAGER_INTEGRABILITY_HPP
#define ONSAGER_INTEGRABILITY_HPP

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "onsager/dense.hpp"
#include "onsager/errors.hpp"
#include "onsager/model.hpp"
#include "onsager/report.hpp"

namespace onsager {

/**
 * Parameterized operator on (auxiliary slot) x (one physical site). The
 * auxiliary space is treated as a single slot of dimension aux_dim.
 */
struct LaxOperator {
  std::string name;
  std::string parameter;  // "u" (additive, regular at 0) or "z" (multiplicative, regular at 1)
  int aux_dim = 2;
  int phys_dim = 2;
  Complex regular_point = 0.0;
  /// Q_2 = charge_scale * H for the matching Hamiltonian.
  Complex charge_scale = 1.0;
  std::function<ComplexMatrix(Complex)> evaluate;
  std::function<ComplexMatrix(Complex, int)> derivative;
};

/// R on (slot 1) x (slot 2), both of dimension slot_dim.
struct RMatrixSpec {
  std::string name;
  int slot_dim = 2;
  bool difference_form = false;
  std::function<ComplexMatrix(Complex, Complex)> evaluate;
};

/// Eight-vertex weights in the layout [[a1,0,0,d1],[0,b1,c1,0],[0,c2,b2,0],[d2,0,0,a2]].
struct EightVertexWeights {
  Complex a1, a2, b1, b2, c1, c2, d1, d2;

  static EightVertexWeights from_matrix(const ComplexMatrix &m) {
    if (m.rows() != 4 || m.cols() != 4) throw DimensionError("eight-vertex weights need a 4x4 matrix");
    return {m(0, 0), m(3, 3), m(1, 1), m(2, 2), m(1, 2), m(2, 1), m(0, 3), m(3, 0)};
  }
  ComplexMatrix matrix() const {
    ComplexMatrix m = ComplexMatrix::Zero(4, 4);
    m(0, 0) = a1;
    m(3, 3) = a2;
    m(1, 1) = b1;
    m(2, 2) = b2;
    m(1, 2) = c1;
    m(2, 1) = c2;
    m(0, 3) = d1;
    m(3, 0) = d2;
    return m;
  }
  /// a1 a2 + b1 b2 - c1 c2 - d1 d2.
  Complex free_fermion_defect() const { return a1 * a2 + b1 * b2 - c1 * c2 - d1 * d2; }
};

namespace detail {

inline void check_tanh_pole(Complex u) {
  if (std::abs(std::cosh(u)) < 1e-12) throw NumericalError("spectral parameter at a pole of tanh");
}

inline void check_nonzero(Complex z) {
  if (std::abs(z) < 1e-300) throw NumericalError("spectral parameter z must be nonzero");
}

/// n-th derivative of x(u) = -i tanh u.
inline Complex tanh_coefficient(Complex u, int order) {
  check_tanh_pole(u);
  const Complex t = std::tanh(u);
  const Complex sech2 = 1.0 - t * t;
  const Complex mi(0.0, -1.0);
  switch (order) {
    case 0: return mi * t;
    case 1: return mi * sech2;
    case 2: return Complex(0.0, 2.0) * sech2 * t;
    default: throw DimensionError("only derivatives up to order 2 are available");
  }
}

/// n-th derivative of alpha(z) = (sqrt2/4)(z - 1/z).
inline Complex alpha_coefficient(Complex z, int order) {
  check_nonzero(z);
  const double s = std::numbers::sqrt2 / 4.0;
  switch (order) {
    case 0: return s * (z - 1.0 / z);
    case 1: return s * (1.0 + 1.0 / (z * z));
    case 2: return -2.0 * s / (z * z * z);
    default: throw DimensionError("only derivatives up to order 2 are available");
  }
}

/// n-th derivative of beta(z) = ((z + 1/z)/2 - 1)/2.
inline Complex beta_coefficient(Complex z, int order) {
  check_nonzero(z);
  switch (order) {
    case 0: return 0.5 * (0.5 * (z + 1.0 / z) - 1.0);
    case 1: return 0.25 * (1.0 - 1.0 / (z * z));
    case 2: return 0.5 / (z * z * z);
    default: throw DimensionError("only derivatives up to order 2 are available");
  }
}

inline ComplexMatrix swap2() { return permutation_operator(2, 0, 1, 2); }

/// P_{b,j} P_{a,j} on (a, b, j).
inline ComplexMatrix fendley_permutation() {
  return permutation_operator(2, 1, 2, 3) * permutation_operator(2, 0, 2, 3);
}

inline ComplexMatrix h8v(double theta) {
  return std::cos(theta) * kron(pauli::y(), pauli::x()) + std::sin(theta) * kron(pauli::x(), pauli::y());
}

inline ComplexMatrix hfendley(double theta) {
  return std::cos(theta) * kron({pauli::y(), pauli::x(), pauli::x()}) +
         std::sin(theta) * kron({pauli::x(), pauli::x(), pauli::y()});
}

/// (c0 + x h) P with c0 = 1 at order 0 and 0 otherwise.
inline ComplexMatrix linear_lax(const ComplexMatrix &h, const ComplexMatrix &perm, Complex x, int order) {
  ComplexMatrix m = x * h;
  if (order == 0) m += identity_matrix(h.rows());
  return m * perm;
}

/// (c0 + alpha h + beta h^2) P.
inline ComplexMatrix quadratic_lax(const ComplexMatrix &h, const ComplexMatrix &perm, Complex z, int order) {
  ComplexMatrix m = alpha_coefficient(z, order) * h + beta_coefficient(z, order) * (h * h);
  if (order == 0) m += identity_matrix(h.rows());
  return m * perm;
}

}  // namespace detail

/// (1 - i tanh(u) sigma^y_a sigma^x_j) P_{a,j} on (a, j).
inline ComplexMatrix lax_8v(Complex u) {
  return detail::linear_lax(detail::h8v(0.0), detail::swap2(), detail::tanh_coefficient(u, 0), 0);
}

/// [1 + alpha(z) h(theta) + beta(z) h(theta)^2] P_{a,j}, h = cos sigma^y sigma^x + sin sigma^x sigma^y.
inline ComplexMatrix lax_8v_full(Complex z, double theta) {
  return detail::quadratic_lax(detail::h8v(theta), detail::swap2(), z, 0);
}

/// (1 - i tanh(u) sigma^y_a sigma^x_b sigma^x_j) P_{b,j} P_{a,j} on (a, b, j).
inline ComplexMatrix lax_fendley(Complex u) {
  return detail::linear_lax(detail::hfendley(0.0), detail::fendley_permutation(), detail::tanh_coefficient(u, 0), 0);
}

/// Quadratic Lax with h(theta) = cos sigma^y_a sigma^x_b sigma^x_j + sin sigma^x_a sigma^x_b sigma^y_j.
inline ComplexMatrix lax_fendley_full(Complex z, double theta) {
  return detail::quadratic_lax(detail::hfendley(theta), detail::fendley_permutation(), z, 0);
}

inline LaxOperator lax_8v_operator() {
  LaxOperator l;
  l.name = "lax_8v";
  l.parameter = "u";
  l.aux_dim = 2;
  l.regular_point = 0.0;
  l.charge_scale = 1.0;
  l.evaluate = [](Complex u) { return lax_8v(u); };
  l.derivative = [](Complex u, int order) {
    return detail::linear_lax(detail::h8v(0.0), detail::swap2(), detail::tanh_coefficient(u, order), order);
  };
  return l;
}

inline LaxOperator lax_8v_full_operator(double theta) {
  LaxOperator l;
  l.name = "lax_8v_full";
  l.parameter = "z";
  l.aux_dim = 2;
  l.regular_point = 1.0;
  l.charge_scale = Complex(0.0, std::numbers::sqrt2 / 2.0);
  l.evaluate = [theta](Complex z) { return lax_8v_full(z, theta); };
  l.derivative = [theta](Complex z, int order) {
    return detail::quadratic_lax(detail::h8v(theta), detail::swap2(), z, order);
  };
  return l;
}

inline LaxOperator lax_fendley_operator() {
  LaxOperator l;
  l.name = "lax_fendley";
  l.parameter = "u";
  l.aux_dim = 4;
  l.regular_point = 0.0;
  l.charge_scale = 1.0;
  l.evaluate = [](Complex u) { return lax_fendley(u); };
  l.derivative = [](Complex u, int order) {
    return detail::linear_lax(detail::hfendley(0.0), detail::fendley_permutation(), detail::tanh_coefficient(u, order),
                              order);
  };
  return l;
}

inline LaxOperator lax_fendley_full_operator(double theta) {
  LaxOperator l;
  l.name = "lax_fendley_full";
  l.parameter = "z";
  l.aux_dim = 4;
  l.regular_point = 1.0;
  l.charge_scale = Complex(0.0, std::numbers::sqrt2 / 2.0);
  l.evaluate = [theta](Complex z) { return lax_fendley_full(z, theta); };
  l.derivative = [theta](Complex z, int order) {
    return detail::quadratic_lax(detail::hfendley(theta), detail::fendley_permutation(), z, order);
  };
  return l;
}

/// Lax operator whose transfer matrix generates the model's Hamiltonian.
inline LaxOperator lax_for_model(const ModelSpec &m) {
  m.validate();
  switch (m.kind) {
    case ModelKind::kFf8v:
      return m.theta == 0.0 ? lax_8v_operator() : lax_8v_full_operator(m.theta);
    case ModelKind::kFendley:
      if (m.r == 2) return lax_fendley_operator();
      break;
    case ModelKind::kFendleyDual:
      if (m.r == 2) return lax_fendley_full_operator(std::numbers::pi / 2.0);
      break;
    case ModelKind::kFendleyMixed:
      if (m.r == 2) return m.theta == 0.0 ? lax_fendley_operator() : lax_fendley_full_operator(m.theta);
      break;
    default:
      break;
  }
  throw ConfigError("no Lax operator for " + to_string(m.kind) + " with r = " + std::to_string(m.r));
}

/// Eight-vertex weights of lax_8v(u).
inline EightVertexWeights weights_8v(Complex u) { return EightVertexWeights::from_matrix(lax_8v(u)); }

/**
 * Closed-form weights of lax_8v_full(z, theta):
 * a = [(z+1)^2 + (z-1)^2 sin 2t]/(4z), c = [(z+1)^2 - (z-1)^2 sin 2t]/(4z),
 * b1 = -b2 = (z^2-1)(cos t - sin t)/(2 sqrt2 i z), d1 = -d2 = (z^2-1)(cos t + sin t)/(2 sqrt2 i z).
 */
inline EightVertexWeights weights_8v_full(Complex z, double theta) {
  detail::check_nonzero(z);
  const Complex s2 = std::sin(2.0 * theta);
  const Complex zp = (z + 1.0) * (z + 1.0), zm = (z - 1.0) * (z - 1.0);
  const Complex a = (zp + zm * s2) / (4.0 * z);
  const Complex c = (zp - zm * s2) / (4.0 * z);
  const Complex den = 2.0 * std::numbers::sqrt2 * Complex(0.0, 1.0) * z;
  const Complex b = (z * z - 1.0) * (std::cos(theta) - std::sin(theta)) / den;
  const Complex d = (z * z - 1.0) * (std::cos(theta) + std::sin(theta)) / den;
  return {a, a, b, -b, c, c, d, -d};
}

/// Difference-form R for lax_8v: R(u, v) = lax_8v(u - v) on (slot 1, slot 2).
inline ComplexMatrix r_8v(Complex u) { return lax_8v(u); }

/// Eight-vertex R with the q-polynomial coefficients, layout [[a,0,0,d],[0,b,c,0],[0,c,-b,0],[-d,0,0,a]].
inline ComplexMatrix r_8v_full(Complex z, Complex w, Complex q) {
  const Complex I(0.0, 1.0);
  const Complex q2 = q * q, q4 = q2 * q2, q6 = q4 * q2, q8 = q4 * q4;
  const Complex zw2 = (z - w) * (z - w);
  const Complex base = (z - 1.0) * (z - 1.0) * (w - 1.0) * (w - 1.0);
  const Complex mid = z * z * (7.0 * w * w + 2.0 * w - 1.0) + 2.0 * z * (w * w + 6.0 * w + 1.0) - w * w + 2.0 * w + 7.0;
  const Complex a = q8 * base + 8.0 * I * q6 * zw2 - 2.0 * q4 * mid - 8.0 * I * q2 * zw2 + base;
  const Complex c = q8 * base - 8.0 * I * q6 * zw2 - 2.0 * q4 * mid + 8.0 * I * q2 * zw2 + base;
  const Complex em = std::exp(I * (std::numbers::pi / 4.0));
  const Complex ep = std::exp(-I * (std::numbers::pi / 4.0));
  const Complex b = -4.0 * em * q * (q2 - I) *
                    (z * z * (1.0 + q4 * (w - 1.0) - w - 2.0 * I * q2 * (w + 1.0)) -
                     (q2 - I) * (q2 - I) * z * (w * w - 1.0) + w * (1.0 + q4 * (w - 1.0) - w + 2.0 * I * q2 * (w + 1.0)));
  const Complex d = 4.0 * ep * q * (q2 + I) *
                    (z * z * (1.0 + q4 * (w - 1.0) - w + 2.0 * I * q2 * (w + 1.0)) -
                     (q2 + I) * (q2 + I) * z * (w * w - 1.0) + w * (1.0 + q4 * (w - 1.0) - w - 2.0 * I * q2 * (w + 1.0)));
  return EightVertexWeights{a, a, b, -b, c, c, d, -d}.matrix();
}

namespace detail {

/// Sparsity pattern of the 16x16 Fendley R: entry k selects +-r_|k| (0 = zero).
inline const std::array<std::array<int, 16>, 16> &fendley_r_pattern() {
  static const std::array<std::array<int, 16>, 16> pattern = {{
      {1, 0, 0, 0, 0, 0, 3, 0, 0, 0, 0, 2, 0, 2, 0, 0},
      {0, 0, 3, 0, 1, 0, 0, 0, 0, 2, 0, 0, 0, 0, 0, 2},
      {0, 0, 0, 2, 0, 2, 0, 0, 1, 0, 0, 0, 0, 0, 3, 0},
      {0, 2, 0, 0, 0, 0, 0, 2, 0, 0, 3, 0, 1, 0, 0, 0},
      {0, 1, 0, 0, 0, 0, 0, -3, 0, 0, 2, 0, -2, 0, 0, 0},
      {0, 0, 0, -3, 0, 1, 0, 0, -2, 0, 0, 0, 0, 0, 2, 0},
      {0, 0, 2, 0, -2, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, -3},
      {-2, 0, 0, 0, 0, 0, 2, 0, 0, 0, 0, -3, 0, 1, 0, 0},
      {0, 0, 1, 0, -3, 0, 0, 0, 0, -2, 0, 0, 0, 0, 0, 2},
      {-3, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 2, 0, -2, 0, 0},
      {0, -2, 0, 0, 0, 0, 0, 2, 0, 0, 1, 0, -3, 0, 0, 0},
      {0, 0, 0, 2, 0, -2, 0, 0, -3, 0, 0, 0, 0, 0, 1, 0},
      {0, 0, 0, 1, 0, 3, 0, 0, -2, 0, 0, 0, 0, 0, -2, 0},
      {0, 3, 0, 0, 0, 0, 0, 1, 0, 0, -2, 0, -2, 0, 0, 0},
      {-2, 0, 0, 0, 0, 0, -2, 0, 0, 0, 0, 1, 0, 3, 0, 0},
      {0, 0, -2, 0, -2, 0, 0, 0, 0, 3, 0, 0, 0, 0, 0, 1},
  }};
  return pattern;
}

inline ComplexMatrix fendley_r_from(Complex r1, Complex r2, Complex r3) {
  const auto &pat = fendley_r_pattern();
  const Complex vals[4] = {0.0, r1, r2, r3};
  ComplexMatrix m = ComplexMatrix::Zero(16, 16);
  for (int i = 0; i < 16; ++i)
    for (int j = 0; j < 16; ++j) {
      int k = pat[i][j];
      if (k) m(i, j) = k > 0 ? vals[k] : -vals[-k];
    }
  return m;
}

}  // namespace detail

/**
 * Fendley R on ((a,b), (c,d)) intertwining lax_fendley:
 * r1 = 1, r2 = tanh(v - u), r3 = -tanh(u - v) tanh(u + v).
 */
inline ComplexMatrix r_fendley(Complex u, Complex v) {
  detail::check_tanh_pole(u - v);
  detail::check_tanh_pole(u + v);
  const Complex r2 = std::tanh(v - u);
  const Complex r3 = -std::tanh(u - v) * std::tanh(u + v);
  return detail::fendley_r_from(1.0, r2, r3);
}

/// The same sparsity pattern with r2 = tanh(u - v); intertwines lax_fendley at (-u, -v) only.
inline ComplexMatrix r_fendley_reflected(Complex u, Complex v) { return r_fendley(-u, -v); }

/// Scalar s with R_{(ab)(cd)}(u,v) R_{(cd)(ab)}(v,u) = s * 1.
inline Complex fendley_inversion_scalar(Complex u, Complex v) {
  const Complex num = 2.0 * (std::cosh(4.0 * u) + std::cosh(4.0 * v) - 2.0 * std::sinh(2.0 * u) * std::sinh(2.0 * v));
  const Complex den = std::cosh(2.0 * u) + std::cosh(2.0 * v);
  return num / (den * den);
}

inline RMatrixSpec r_8v_spec() {
  return {"r_8v", 2, true, [](Complex u, Complex v) { return r_8v(u - v); }};
}

inline RMatrixSpec r_8v_full_spec(double theta) {
  const Complex q = std::exp(Complex(0.0, theta));
  return {"r_8v_full", 2, false, [q](Complex z, Complex w) { return r_8v_full(z, w, q); }};
}

inline RMatrixSpec r_fendley_spec() { return {"r_fendley", 4, false, [](Complex u, Complex v) { return r_fendley(u, v); }}; }

/// Swap the two factors of an operator on (slot 1) x (slot 2).
inline ComplexMatrix swap_factors(const ComplexMatrix &m, int slot_dim) {
  ComplexMatrix p = permutation_operator(slot_dim, 0, 1, 2);
  return p * m * p;
}

// ---------------------------------------------------------------------------
// Monodromy, transfer matrices and charges.

namespace detail {

inline SlotLayout chain_layout(const LaxOperator &lax, int L, std::size_t cap) {
  if (L < 1) throw ConfigError("chain length must be >= 1");
  std::size_t dim = static_cast<std::size_t>(lax.aux_dim);
  for (int j = 0; j < L; ++j) {
    dim *= static_cast<std::size_t>(lax.phys_dim);
    if (dim > cap) throw CapExceeded("monodromy dimension exceeds cap " + std::to_string(cap));
  }
  SlotLayout layout;
  layout.dims.push_back(lax.aux_dim);
  for (int j = 0; j < L; ++j) layout.dims.push_back(lax.phys_dim);
  return layout;
}

}  // namespace detail

/// M(p) = L_{a,1}(p) L_{a,2}(p) ... L_{a,L}(p); auxiliary slot first.
inline ComplexMatrix monodromy(const LaxOperator &lax, int L, Complex p, std::size_t cap = kDefaultDenseCap) {
  SlotLayout layout = detail::chain_layout(lax, L, cap);
  ComplexMatrix gate = lax.evaluate(p);
  ComplexMatrix m = identity_matrix(layout.total());
  for (int j = 1; j <= L; ++j) m = apply_right(m, gate, {0, j}, layout);
  return m;
}

inline ComplexMatrix transfer(const LaxOperator &lax, int L, Complex p, std::size_t cap = kDefaultDenseCap) {
  return partial_trace_leading(monodromy(lax, L, p, cap), lax.aux_dim);
}

/// T(p) with its first two parameter derivatives.
struct TransferJet {
  ComplexMatrix t, dt, d2t;
};

/// Product-rule propagation of (M, M', M'') across the sites with analytic Lax derivatives.
inline TransferJet transfer_jet(const LaxOperator &lax, int L, Complex p, std::size_t cap = kDefaultDenseCap) {
  SlotLayout layout = detail::chain_layout(lax, L, cap);
  const ComplexMatrix g0 = lax.evaluate(p), g1 = lax.derivative(p, 1), g2 = lax.derivative(p, 2);
  ComplexMatrix m = identity_matrix(layout.total());
  ComplexMatrix m1 = ComplexMatrix::Zero(m.rows(), m.cols());
  ComplexMatrix m2 = m1;
  for (int j = 1; j <= L; ++j) {
    const std::vector<int> slots{0, j};
    ComplexMatrix n2 = apply_right(m2, g0, slots, layout) + 2.0 * apply_right(m1, g1, slots, layout) +
                       apply_right(m, g2, slots, layout);
    ComplexMatrix n1 = apply_right(m1, g0, slots, layout) + apply_right(m, g1, slots, layout);
    m = apply_right(m, g0, slots, layout);
    m1 = std::move(n1);
    m2 = std::move(n2);
  }
  return {partial_trace_leading(m, lax.aux_dim), partial_trace_leading(m1, lax.aux_dim),
          partial_trace_leading(m2, lax.aux_dim)};
}

/// Central difference of T with one Richardson step (error O(h^4)).
inline ComplexMatrix transfer_derivative_fd(const LaxOperator &lax, int L, Complex p, double step = 1e-5,
                                            std::size_t cap = kDefaultDenseCap) {
  auto central = [&](double h) -> ComplexMatrix { return (transfer(lax, L, p + h, cap) - transfer(lax, L, p - h, cap)) / (2.0 * h); };
  return (4.0 * central(step / 2.0) - central(step)) / 3.0;
}

/**
 * Q_{n+1} = i d^n/dp^n log T(p) at the regular point, n in {1, 2}:
 * Q_2 = i T^{-1} T', Q_3 = i [T^{-1} T'' - (T^{-1} T')^2].
 */
inline ComplexMatrix charge(const LaxOperator &lax, int L, int n, std::size_t cap = kDefaultDenseCap) {
  if (n != 1 && n != 2) throw ConfigError("charge order n must be 1 or 2");
  TransferJet jet = transfer_jet(lax, L, lax.regular_point, cap);
  ComplexMatrix tinv = inverse(jet.t);
  ComplexMatrix first = tinv * jet.dt;
  const Complex i(0.0, 1.0);
  if (n == 1) return i * first;
  return i * (tinv * jet.d2t - first * first);
}

// ---------------------------------------------------------------------------
// Sampling and checks.

/// Deterministic complex samples with |Re| <= 1 and |Im| <= 0.5.
class ParameterSampler {
 public:
  explicit ParameterSampler(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) {
    // 53-bit mantissa from the raw engine output keeps the stream portable.
    double unit = static_cast<double>(rng_() >> 11) * (1.0 / 9007199254740992.0);
    return lo + (hi - lo) * unit;
  }
  Complex additive() {
    double re = uniform(-1.0, 1.0);
    double im = uniform(-0.5, 0.5);
    return {re, im};
  }
  /// Multiplicative parameter exp(s) with s drawn like an additive one.
  Complex multiplicative() { return std::exp(additive()); }
  Complex for_lax(const LaxOperator &lax) { return lax.parameter == "z" ? multiplicative() : additive(); }

 private:
  std::mt19937_64 rng_;
};

inline double relative_difference(const ComplexMatrix &a, const ComplexMatrix &b) {
  const double scale = std::max({a.norm(), b.norm(), 1e-300});
  return (a - b).norm() / scale;
}

/// || R_12 L_1j L_2j - L_2j L_1j R_12 || relative to the operand scale.
inline double ybe_rll_residual(const ComplexMatrix &r12, const ComplexMatrix &l1, const ComplexMatrix &l2, int aux_dim,
                               int phys_dim) {
  SlotLayout layout{{aux_dim, aux_dim, phys_dim}};
  ComplexMatrix R = embed(r12, {0, 1}, layout);
  ComplexMatrix A = embed(l1, {0, 2}, layout);
  ComplexMatrix B = embed(l2, {1, 2}, layout);
  return relative_difference(R * A * B, B * A * R);
}

/// || R_12 R_13 R_23 - R_23 R_13 R_12 || relative to the operand scale.
inline double ybe_rrr_residual(const ComplexMatrix &r12, const ComplexMatrix &r13, const ComplexMatrix &r23,
                               int slot_dim) {
  SlotLayout layout{{slot_dim, slot_dim, slot_dim}};
  ComplexMatrix A = embed(r12, {0, 1}, layout);
  ComplexMatrix B = embed(r13, {0, 2}, layout);
  ComplexMatrix C = embed(r23, {1, 2}, layout);
  return relative_difference(A * B * C, C * B * A);
}

inline nlohmann::json complex_json(Complex c) { return nlohmann::json::array({c.real(), c.imag()}); }

/// Max RLL residual over sampled parameter pairs.
inline VerificationReport check_ybe(const RMatrixSpec &R, const LaxOperator &lax, int samples, std::uint64_t seed,
                                    double tol = 1e-10) {
  if (R.slot_dim != lax.aux_dim) throw DimensionError("R slot dimension differs from the Lax auxiliary dimension");
  Stopwatch sw;
  ParameterSampler sampler(seed);
  double worst = 0.0;
  nlohmann::json points = nlohmann::json::array();
  for (int k = 0; k < samples; ++k) {
    Complex p1 = sampler.for_lax(lax), p2 = sampler.for_lax(lax);
    double res = ybe_rll_residual(R.evaluate(p1, p2), lax.evaluate(p1), lax.evaluate(p2), lax.aux_dim, lax.phys_dim);
    worst = std::max(worst, res);
    points.push_back({complex_json(p1), complex_json(p2)});
  }
  auto rep = make_report("integrability", "ybe_rll:" + R.name + "/" + lax.name, "yang-baxter-rll",
                         {{"samples", samples}, {"points", points}}, worst, tol, seed);
  rep.wall_ms = sw.elapsed_ms();
  return rep;
}

/// Max RRR residual over sampled parameter triples.
inline VerificationReport check_ybe(const RMatrixSpec &R, int samples, std::uint64_t seed, bool multiplicative,
                                    double tol = 1e-10) {
  Stopwatch sw;
  ParameterSampler sampler(seed);
  double worst = 0.0;
  nlohmann::json points = nlohmann::json::array();
  for (int k = 0; k < samples; ++k) {
    Complex p1 = multiplicative ? sampler.multiplicative() : sampler.additive();
    Complex p2 = multiplicative ? sampler.multiplicative() : sampler.additive();
    Complex p3 = multiplicative ? sampler.multiplicative() : sampler.additive();
    double res = ybe_rrr_residual(R.evaluate(p1, p2), R.evaluate(p1, p3), R.evaluate(p2, p3), R.slot_dim);
    worst = std::max(worst, res);
    points.push_back({complex_json(p1), complex_json(p2), complex_json(p3)});
  }
  auto rep = make_report("integrability", "ybe_rrr:" + R.name, "yang-baxter-rrr",
                         {{"samples", samples}, {"points", points}}, worst, tol, seed);
  rep.wall_ms = sw.elapsed_ms();
  return rep;
}

/// RLL and RRR for the q-polynomial eight-vertex R with theta drawn per sample.
inline std::vector<VerificationReport> check_ybe_8v_full(int samples, std::uint64_t seed, double tol = 1e-10) {
  Stopwatch sw;
  ParameterSampler sampler(seed);
  double worst_rll = 0.0, worst_rrr = 0.0;
  nlohmann::json points = nlohmann::json::array();
  for (int k = 0; k < samples; ++k) {
    Complex z = sampler.multiplicative(), w = sampler.multiplicative(), y = sampler.multiplicative();
    double theta = sampler.uniform(0.0, 2.0 * std::numbers::pi);
    Complex q = std::exp(Complex(0.0, theta));
    worst_rll = std::max(worst_rll, ybe_rll_residual(r_8v_full(z, w, q), lax_8v_full(z, theta), lax_8v_full(w, theta), 2, 2));
    worst_rrr = std::max(worst_rrr, ybe_rrr_residual(r_8v_full(z, w, q), r_8v_full(z, y, q), r_8v_full(w, y, q), 2));
    points.push_back({complex_json(z), complex_json(w), complex_json(y), theta});
  }
  nlohmann::json params = {{"samples", samples}, {"points", points}};
  auto a = make_report("integrability", "ybe_rll:r_8v_full/lax_8v_full", "yang-baxter-rll", params, worst_rll, tol, seed);
  auto b = make_report("integrability", "ybe_rrr:r_8v_full", "yang-baxter-rrr", params, worst_rrr, tol, seed);
  a.wall_ms = b.wall_ms = sw.elapsed_ms();
  return {a, b};
}

enum class FreeFermionSource { kTrigonometric, kFullTheta };

/// max |a1 a2 + b1 b2 - c1 c2 - d1 d2| over sampled parameters.
inline VerificationReport check_free_fermion(FreeFermionSource source, int samples, std::uint64_t seed,
                                             double tol = 1e-12) {
  Stopwatch sw;
  ParameterSampler sampler(seed);
  double worst = 0.0;
  for (int k = 0; k < samples; ++k) {
    EightVertexWeights w;
    if (source == FreeFermionSource::kTrigonometric) {
      w = weights_8v(sampler.additive());
    } else {
      Complex z = sampler.multiplicative();
      double theta = sampler.uniform(0.0, 2.0 * std::numbers::pi);
      w = weights_8v_full(z, theta);
    }
    worst = std::max(worst, std::abs(w.free_fermion_defect()));
  }
  std::string which = source == FreeFermionSource::kTrigonometric ? "lax_8v" : "lax_8v_full";
  auto rep = make_report("integrability", "free_fermion:" + which, "free-fermion-condition", {{"samples", samples}},
                         worst, tol, seed);
  rep.wall_ms = sw.elapsed_ms();
  return rep;
}

/// max ||[T(p1), T(p2)]|| / (||T(p1)|| ||T(p2)||) over sampled pairs.
inline VerificationReport check_transfer_commutation(const LaxOperator &lax, int L, int samples, std::uint64_t seed,
                                                     double tol = 1e-10, std::size_t cap = kDefaultDenseCap) {
  Stopwatch sw;
  ParameterSampler sampler(seed);
  double worst = 0.0;
  for (int k = 0; k < samples; ++k) {
    Complex p1 = sampler.for_lax(lax), p2 = sampler.for_lax(lax);
    ComplexMatrix a = transfer(lax, L, p1, cap), b = transfer(lax, L, p2, cap);
    worst = std::max(worst, commutator(a, b).norm() / (a.norm() * b.norm()));
  }
  auto rep = make_report("integrability", "transfer_commute:" + lax.name, "transfer-involution",
                         {{"L", L}, {"samples", samples}}, worst, tol, seed);
  rep.wall_ms = sw.elapsed_ms();
  return rep;
}

/// max ||[T(p), H]|| / (||T(p)|| ||H||) over sampled p.
inline VerificationReport check_transfer_hamiltonian(const LaxOperator &lax, int L, const ComplexMatrix &h, int samples,
                                                     std::uint64_t seed, double tol = 1e-9,
                                                     std::size_t cap = kDefaultDenseCap) {
  Stopwatch sw;
  ParameterSampler sampler(seed);
  double worst = 0.0;
  for (int k = 0; k < samples; ++k) {
    ComplexMatrix t = transfer(lax, L, sampler.for_lax(lax), cap);
    worst = std::max(worst, commutator(t, h).norm() / (t.norm() * h.norm()));
  }
  auto rep = make_report("integrability", "transfer_hamiltonian:" + lax.name, "transfer-involution",
                         {{"L", L}, {"samples", samples}}, worst, tol, seed);
  rep.wall_ms = sw.elapsed_ms();
  return rep;
}

/// Relative agreement between the analytic T'(p) and the Richardson finite difference.
inline VerificationReport check_derivative_fd(const LaxOperator &lax, int L, int samples, std::uint64_t seed,
                                              double tol = 1e-6) {
  Stopwatch sw;
  ParameterSampler sampler(seed);
  double worst = 0.0;
  std::vector<Complex> points{lax.regular_point};
  for (int k = 0; k < samples; ++k) points.push_back(sampler.for_lax(lax));
  for (Complex p : points) {
    ComplexMatrix analytic = transfer_jet(lax, L, p).dt;
    worst = std::max(worst, relative_difference(analytic, transfer_derivative_fd(lax, L, p)));
  }
  auto rep = make_report("integrability", "derivative_fd:" + lax.name, "log-derivative-charges",
                         {{"L", L}, {"samples", samples + 1}}, worst, tol, seed);
  rep.wall_ms = sw.elapsed_ms();
  return rep;
}

/**
 * Charges from the logarithmic derivative of the model's transfer matrix:
 * Q_2 = charge_scale H, and for the r = 2 Fendley chain
 * Q_3 = -2i sum_j (h_j h_{j+1} + h_j h_{j+2}) + iL = -4 sum_{s<t} H^(s,t) + iL.
 */
inline std::vector<VerificationReport> check_charges(const ModelSpec &model, double tol = 1e-8) {
  Stopwatch sw;
  ModelSpec m = model;
  m.boundary = Boundary::kPeriodic;
  m.couplings.clear();
  m.lambda = 1.0;
  LaxOperator lax = lax_for_model(m);
  nlohmann::json params = {{"kind", to_string(m.kind)}, {"L", m.L}, {"theta", m.theta}, {"lax", lax.name}};
  std::vector<VerificationReport> out;
  ComplexMatrix h = to_dense(hamiltonian(m));
  ComplexMatrix q2 = charge(lax, m.L, 1);
  out.push_back(make_report("integrability", "charge:Q2_vs_H", "log-derivative-charges", params,
                            relative_difference(q2, lax.charge_scale * h), tol));
  if (m.kind == ModelKind::kFendley && m.r == 2) {
    ComplexMatrix q3 = charge(lax, m.L, 2);
    const Complex i(0.0, 1.0);
    OperatorSum local(2, m.L);
    for (int j = 1; j <= m.L; ++j) {
      OperatorSum hj = gca_generator(m, j);
      local = add(local, multiply(hj, gca_generator(m, detail::wrap_label(j + 1, m.L))));
      local = add(local, multiply(hj, gca_generator(m, detail::wrap_label(j + 2, m.L))));
    }
    OperatorSum constant = OperatorSum::identity(2, m.L, i * static_cast<double>(m.L));
    ComplexMatrix local_form = to_dense(add(scale(local, -2.0 * i), constant));
    out.push_back(make_report("integrability", "charge:Q3_local_form", "log-derivative-charges", params,
                              relative_difference(q3, local_form), tol));
    if (m.L % 3 == 0) {
      OperatorSum sum(2, m.L);
      for (int s = 0; s <= 2; ++s)
        for (int t = s + 1; t <= 2; ++t) sum = add(sum, commuting_charge(m, s, t));
      ComplexMatrix onsager_form = to_dense(add(scale(sum, -4.0), constant));
      out.push_back(make_report("integrability", "charge:Q3_onsager_form", "log-derivative-charges", params,
                                relative_difference(q3, onsager_form), tol));
    }
  }
  for (auto &r : out) r.wall_ms = sw.elapsed_ms();
  return out;
}

}  // namespace onsager

#endif  // ONSAGER_INTEGRABILITY_HPP
