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

#ifndef ONSAGER_INTERTWINER_HPP
#define ONSAGER_INTERTWINER_HPP

#include <cmath>
#include <complex>
#include <limits>
#include <cstdint>
#include <numbers>
#include <string>
#include <vector>

#include "onsager/dense.hpp"
#include "onsager/integrability.hpp"
#include "onsager/report.hpp"

namespace onsager {

/**
 * Linear system S vec(R) = 0 for R_12 L_1j(p1) L_2j(p2) = L_2j(p2) L_1j(p1) R_12.
 *
 * With D = d^2 * d_phys and M1 = L_1j L_2j, M2 = L_2j L_1j, every entry
 * (row, col) of the D x D equation is one constraint: rows of S are indexed by
 * row * D + col, columns by the row-major position of the unknown R entry.
 */
inline ComplexMatrix build_ybe_system(const LaxOperator &lax, Complex p1, Complex p2) {
  const int d = lax.aux_dim, dp = lax.phys_dim;
  SlotLayout layout{{d, d, dp}};
  const ComplexMatrix l1 = embed(lax.evaluate(p1), {0, 2}, layout);
  const ComplexMatrix l2 = embed(lax.evaluate(p2), {1, 2}, layout);
  const ComplexMatrix m1 = l1 * l2, m2 = l2 * l1;
  const Eigen::Index D = layout.total();
  const Eigen::Index A = static_cast<Eigen::Index>(d) * d;  // R acts on the first A-dim factor
  ComplexMatrix s = ComplexMatrix::Zero(D * D, A * A);
  for (Eigen::Index alpha = 0; alpha < A; ++alpha)
    for (Eigen::Index p = 0; p < dp; ++p) {
      const Eigen::Index row = alpha * dp + p;
      for (Eigen::Index col = 0; col < D; ++col) {
        const Eigen::Index eq = row * D + col;
        // (R x 1) M1: sum_gamma R[alpha, gamma] M1[(gamma, p), col]
        for (Eigen::Index gamma = 0; gamma < A; ++gamma) s(eq, alpha * A + gamma) += m1(gamma * dp + p, col);
        // - M2 (R x 1): sum_delta M2[row, (delta, q)] R[delta, beta] with col = (beta, q)
        const Eigen::Index beta = col / dp, q = col % dp;
        for (Eigen::Index delta = 0; delta < A; ++delta) s(eq, delta * A + beta) -= m2(row, delta * dp + q);
      }
    }
  return s;
}

struct IntertwinerSolution {
  std::vector<ComplexMatrix> candidates;
  int kernel_dim = 0;
  std::vector<double> singular_values;  // ascending tail of the spectrum, for diagnostics
};

/// Scale so the first entry (row-major) above 1e-8 of the largest becomes 1.
inline ComplexMatrix normalize_first_nonzero(const ComplexMatrix &m) {
  const double cutoff = 1e-8 * m.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (std::abs(m(i, j)) > cutoff) return m / m(i, j);
  return m;
}

/// Kernel of the YBE system reshaped to R matrices; a unique solution is normalized.
inline IntertwinerSolution solve_intertwiner(const LaxOperator &lax, Complex p1, Complex p2, double tol = 1e-10) {
  ComplexMatrix s = build_ybe_system(lax, p1, p2);
  const Eigen::Index A = static_cast<Eigen::Index>(lax.aux_dim) * lax.aux_dim;
  IntertwinerSolution out;
  for (const auto &v : null_space(s, tol)) {
    ComplexMatrix r(A, A);
    for (Eigen::Index i = 0; i < A; ++i)
      for (Eigen::Index j = 0; j < A; ++j) r(i, j) = v(i * A + j);
    out.candidates.push_back(r);
  }
  out.kernel_dim = static_cast<int>(out.candidates.size());
  if (out.kernel_dim == 1) out.candidates[0] = normalize_first_nonzero(out.candidates[0]);
  auto sv = singular_values(s);
  for (std::size_t k = sv.size() > 4 ? sv.size() - 4 : 0; k < sv.size(); ++k) out.singular_values.push_back(sv[k]);
  return out;
}

struct ScalarMatch {
  Complex scalar;
  double residual;
};

/// alpha minimizing ||candidate - alpha reference||, residual relative to ||alpha reference||.
inline ScalarMatch match_to_reference(const ComplexMatrix &candidate, const ComplexMatrix &reference) {
  if (candidate.rows() != reference.rows() || candidate.cols() != reference.cols())
    throw DimensionError("candidate and reference shapes differ");
  const double rr = reference.squaredNorm();
  if (rr == 0.0) throw NumericalError("zero reference matrix");
  Complex alpha = (reference.adjoint() * candidate).trace() / rr;
  ComplexMatrix fitted = alpha * reference;
  double scale = std::max(fitted.norm(), candidate.norm());
  return {alpha, scale > 0.0 ? (candidate - fitted).norm() / scale : 0.0};
}

/// One theta_scan sample.
struct ScanPoint {
  double theta;
  Complex z, w;
  int kernel_dim;
  double ybe_residual;  // RLL residual of the candidate (kernel_dim == 1 only, else -1)
  double rrr_residual;  // RRR residual of candidates at (z,w), (z,x), (w,x) (else -1)
};

inline nlohmann::json to_json(const ScanPoint &p) {
  return {{"theta", p.theta},
          {"z", complex_json(p.z)},
          {"w", complex_json(p.w)},
          {"kernel_dim", p.kernel_dim},
          {"ybe_residual", p.ybe_residual},
          {"rrr_residual", p.rrr_residual}};
}

/// Kernel dimensions of the mixed Fendley YBE system over a theta grid.
inline std::vector<ScanPoint> theta_scan(const std::vector<double> &thetas, int sample_pairs, std::uint64_t seed) {
  std::vector<ScanPoint> out;
  ParameterSampler sampler(seed);
  for (double theta : thetas) {
    LaxOperator lax = lax_fendley_full_operator(theta);
    for (int k = 0; k < sample_pairs; ++k) {
      Complex z = sampler.multiplicative(), w = sampler.multiplicative(), x = sampler.multiplicative();
      IntertwinerSolution s = solve_intertwiner(lax, z, w);
      ScanPoint p{theta, z, w, s.kernel_dim, -1.0, -1.0};
      if (s.kernel_dim == 1) {
        p.ybe_residual = ybe_rll_residual(s.candidates[0], lax.evaluate(z), lax.evaluate(w), 4, 2);
        IntertwinerSolution s13 = solve_intertwiner(lax, z, x), s23 = solve_intertwiner(lax, w, x);
        if (s13.kernel_dim == 1 && s23.kernel_dim == 1)
          p.rrr_residual = ybe_rrr_residual(s.candidates[0], s13.candidates[0], s23.candidates[0], 4);
      }
      out.push_back(p);
    }
  }
  return out;
}

namespace detail {

/// L_{a,b,c}(p) L_{a,b,d}(p) on (a, b, c, d).
inline ComplexMatrix lax_pair_product(const LaxOperator &lax, Complex p) {
  SlotLayout layout{{2, 2, 2, 2}};
  ComplexMatrix g = lax.evaluate(p);
  return embed(g, {0, 1, 2}, layout) * embed(g, {0, 1, 3}, layout);
}

/// L_{c,d,b}(p)^{-1} L_{c,d,a}(p)^{-1} on (a, b, c, d).
inline ComplexMatrix lax_pair_inverse_product(const LaxOperator &lax, Complex p) {
  SlotLayout layout{{2, 2, 2, 2}};
  ComplexMatrix g = lax.evaluate(p);
  return inverse(embed(g, {2, 3, 1}, layout)) * inverse(embed(g, {2, 3, 0}, layout));
}

}  // namespace detail

/**
 * The two degenerate limits of the Fendley R: R(p, reg) = L_abc(p) L_abd(p) and
 * R(reg, p) proportional to L_cdb(p)^{-1} L_cda(p)^{-1}. At theta = 0 the closed
 * form R is used and the second scalar is compared with the inversion scalar;
 * otherwise R comes from the intertwiner solver and both limits are scalar fits.
 */
inline std::vector<VerificationReport> check_r_limits(double theta, int samples, std::uint64_t seed,
                                                      double tol = 1e-6) {
  Stopwatch sw;
  ParameterSampler sampler(seed);
  const bool closed_form = theta == 0.0;
  LaxOperator lax = closed_form ? lax_fendley_operator() : lax_fendley_full_operator(theta);
  const Complex reg = lax.regular_point;
  double worst_first = 0.0, worst_second = 0.0, worst_scalar = 0.0;
  nlohmann::json scalars = nlohmann::json::array();
  for (int k = 0; k < samples; ++k) {
    Complex p = sampler.for_lax(lax);
    ComplexMatrix first_ref = detail::lax_pair_product(lax, p);
    ComplexMatrix second_ref = detail::lax_pair_inverse_product(lax, p);
    ComplexMatrix r_first, r_second;
    if (closed_form) {
      r_first = r_fendley(p, reg);
      r_second = r_fendley(reg, p);
    } else {
      auto a = solve_intertwiner(lax, p, reg);
      auto b = solve_intertwiner(lax, reg, p);
      if (a.kernel_dim != 1 || b.kernel_dim != 1) {
        worst_first = worst_second = std::numeric_limits<double>::infinity();
        continue;
      }
      r_first = a.candidates[0];
      r_second = b.candidates[0];
    }
    if (closed_form) {
      worst_first = std::max(worst_first, relative_difference(r_first, first_ref));
    } else {
      worst_first = std::max(worst_first, match_to_reference(r_first, first_ref).residual);
    }
    ScalarMatch m = match_to_reference(r_second, second_ref);
    worst_second = std::max(worst_second, m.residual);
    scalars.push_back(complex_json(m.scalar));
    if (closed_form) {
      Complex s = fendley_inversion_scalar(reg, p);
      worst_scalar = std::max(worst_scalar, std::abs(m.scalar - s) / std::abs(s));
    }
  }
  nlohmann::json params = {{"theta", theta}, {"samples", samples}, {"source", closed_form ? "closed_form" : "solver"}};
  std::vector<VerificationReport> out;
  out.push_back(make_report("integrability", "r_limit:first_slot_regular", "r-matrix-limits", params, worst_first, tol,
                            seed));
  nlohmann::json p2 = params;
  p2["fitted_scalars"] = scalars;
  out.push_back(make_report("integrability", "r_limit:second_slot_regular", "r-matrix-limits", p2, worst_second, tol,
                            seed));
  if (closed_form)
    out.push_back(make_report("integrability", "r_limit:scalar_vs_inversion", "r-matrix-limits", params, worst_scalar,
                              tol, seed));
  for (auto &r : out) r.wall_ms = sw.elapsed_ms();
  return out;
}

}  // namespace onsager

#endif  // ONSAGER_INTERTWINER_HPP
