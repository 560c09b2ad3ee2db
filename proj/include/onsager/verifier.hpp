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

#ifndef ONSAGER_VERIFIER_HPP
#define ONSAGER_VERIFIER_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "onsager/config.hpp"
#include "onsager/dense.hpp"
#include "onsager/model.hpp"
#include "onsager/operator_sum.hpp"
#include "onsager/report.hpp"

namespace onsager {

/// Tolerance for coefficient-level symbolic identities.
inline constexpr double kSymbolicTolerance = 1e-12;
/// Tolerance for normalized dense-norm identities.
inline constexpr double kDenseTolerance = 1e-10;

namespace detail {

inline std::string label(const std::string &base, std::initializer_list<std::pair<const char *, int>> fields) {
  std::string out = base;
  for (const auto &[k, v] : fields) out += std::string(" ") + k + "=" + std::to_string(v);
  return out;
}

/// Split a mixed Fendley model into its two single-string representations.
inline std::vector<ModelSpec> constituent_models(const ModelSpec &m) {
  if (m.kind != ModelKind::kFendleyMixed) return {m};
  ModelSpec a = m, b = m;
  a.kind = ModelKind::kFendley;
  b.kind = ModelKind::kFendleyDual;
  return {a, b};
}

/// ||x - y||_F / max(1, ||y||_F) using the Hilbert-Schmidt identity, or dense matrices for large Q.
inline double normalized_gap(const OperatorSum &x, const OperatorSum &y, bool dense) {
  if (dense) {
    ComplexMatrix a = to_dense(x), b = to_dense(y);
    return (a - b).norm() / std::max(1.0, b.norm());
  }
  return subtract(x, y).frobenius_norm() / std::max(1.0, y.frobenius_norm());
}

inline std::complex<double> identity_coefficient(const OperatorSum &a) {
  return a.coefficient(ClockString::identity(a.q(), a.n()));
}

/// Exchange-phase check of an explicit generator list (the GCA defining relations).
inline std::vector<VerificationReport> verify_gca_strings(const std::vector<ClockString> &gens, int r, int exchange,
                                                          const nlohmann::json &params) {
  std::vector<VerificationReport> out;
  const int n = static_cast<int>(gens.size());
  if (n == 0) return out;
  const int q = gens.front().q;
  for (int j = 1; j <= n; ++j)
    for (int m = 1; m <= n / 2; ++m) {
      const ClockString &a = gens[j - 1];
      const ClockString &b = gens[(j - 1 + m) % n];
      int expected = 0;
      if (m <= r) expected += exchange;
      if (n - m <= r) expected -= exchange;
      expected = ((expected % q) + q) % q;
      int k = exchange_power(a, b);
      double res = k == expected ? 0.0 : std::abs(omega_power(q, k) - omega_power(q, expected));
      auto p = params;
      p["expected_power"] = expected;
      p["measured_power"] = k;
      out.push_back(make_report("gca", label(m <= r ? "exchange" : "commute", {{"j", j}, {"m", m}}),
                                "generalized-clifford", p, res, 0.0));
    }
  for (int j = 1; j <= n; ++j) {
    const ClockString &h = gens[j - 1];
    ClockString hq = power(h, q);
    double res = hq.is_identity() ? std::abs(hq.coeff - 1.0) : 1.0 + std::abs(hq.coeff);
    out.push_back(make_report("gca", label("power", {{"j", j}}), "generalized-clifford", params, res,
                              kSymbolicTolerance));
  }
  return out;
}

}  // namespace detail

/**
 * h_j h_{j+m} = omega^k h_{j+m} h_j for 1 <= m <= r, commutation for
 * r+1 <= m <= floor(N/2), and h_j^Q = id. Phases are compared as integers.
 */
inline std::vector<VerificationReport> verify_gca(const ModelSpec &model) {
  std::vector<VerificationReport> out;
  for (const ModelSpec &m : detail::constituent_models(model)) {
    std::vector<ClockString> gens;
    for (int j = 1; j <= m.generator_count(); ++j) gens.push_back(gca_generator(m, j).terms().front());
    auto part = detail::verify_gca_strings(gens, m.range(), m.exchange_power(), to_json(m));
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

/**
 * Temperley-Lieb relations. Q = 2: e^2 = sqrt2 e, e_j e_{j+-m} e_j = e_j,
 * {e_j, e_{j+m}} = sqrt2 (e_j + e_{j+m}) - id for m <= r, commutation beyond.
 * Q > 2: the coupled relations for all k, l plus e^(k)_j e^(l)_j = 0 (k != l).
 */
inline std::vector<VerificationReport> verify_gtl(const ModelSpec &model) {
  std::vector<VerificationReport> out;
  for (const ModelSpec &m : detail::constituent_models(model)) {
    const int n = m.generator_count();
    const int r = m.range();
    const int q = m.q;
    const nlohmann::json params = to_json(m);
    const double beta_expected = std::sqrt(static_cast<double>(q));
    std::vector<int> ks;
    if (q == 2) ks = {1};
    for (int k = 1; q > 2 && k < q; ++k) ks.push_back(k);
    auto e = [&](int j, int k) {
      return tl_generator(m, detail::wrap_label(j, n), q == 2 ? std::nullopt : std::optional<int>(k));
    };
    const OperatorSum id = OperatorSum::identity(q, m.L);
    for (int j = 1; j <= n; ++j)
      for (int k : ks) {
        OperatorSum ej = e(j, k);
        OperatorSum sq = multiply(ej, ej);
        Complex beta = detail::identity_coefficient(sq) / detail::identity_coefficient(ej);
        auto p = params;
        p["beta_re"] = beta.real();
        p["beta_im"] = beta.imag();
        double res = std::max(max_deviation(sq, scale(ej, beta_expected)), std::abs(beta - beta_expected));
        out.push_back(make_report("gtl", detail::label("square", {{"j", j}, {"k", k}}), "temperley-lieb", p, res,
                                  kSymbolicTolerance));
      }
    for (int j = 1; j <= n; ++j)
      for (int mm = 1; mm <= r; ++mm)
        for (int sign : {+1, -1})
          for (int k : ks)
            for (int l : ks) {
              OperatorSum ej = e(j, k);
              OperatorSum sandwich = multiply(multiply(ej, e(j + sign * mm, l)), ej);
              out.push_back(make_report("gtl",
                                        detail::label(sign > 0 ? "sandwich+" : "sandwich-",
                                                      {{"j", j}, {"m", mm}, {"k", k}, {"l", l}}),
                                        "temperley-lieb", params, max_deviation(sandwich, ej), kSymbolicTolerance));
            }
    for (int j = 1; j <= n; ++j)
      for (int mm = r + 1; mm <= n / 2; ++mm)
        for (int k : ks)
          for (int l : ks) {
            if (n - mm <= r) continue;
            OperatorSum c = commutator(e(j, k), e(j + mm, l));
            out.push_back(make_report("gtl", detail::label("commute", {{"j", j}, {"m", mm}, {"k", k}, {"l", l}}),
                                      "temperley-lieb", params, c.max_abs_coeff(), kSymbolicTolerance));
          }
    if (q == 2) {
      for (int j = 1; j <= n; ++j)
        for (int mm = 1; mm <= r; ++mm) {
          OperatorSum a = e(j, 1), b = e(j + mm, 1);
          OperatorSum rhs = subtract(scale(add(a, b), std::numbers::sqrt2), id);
          out.push_back(make_report("gtl", detail::label("anticommutator", {{"j", j}, {"m", mm}}),
                                    "temperley-lieb-anticommutator", params, max_deviation(anticommutator(a, b), rhs),
                                    kSymbolicTolerance));
        }
    } else {
      for (int j = 1; j <= n; ++j)
        for (int k : ks)
          for (int l : ks) {
            if (k == l) continue;
            OperatorSum prod = multiply(e(j, k), e(j, l));
            out.push_back(make_report("gtl", detail::label("orthogonal", {{"j", j}, {"k", k}, {"l", l}}),
                                      "coupled-temperley-lieb", params, prod.max_abs_coeff(), kSymbolicTolerance));
          }
    }
  }
  return out;
}

/// Dolan-Grady for every ordered pair, and the tower relations when there are two generators.
inline std::vector<VerificationReport> verify_onsager(const ModelSpec &model, int depth = 3) {
  std::vector<VerificationReport> out;
  for (const ModelSpec &m : detail::constituent_models(model)) {
    m.require_onsager_divisibility();
    const int r = m.range();
    const bool dense = m.q >= 5;
    const nlohmann::json params = to_json(m);
    std::vector<OperatorSum> gens;
    for (int s = 0; s <= r; ++s) gens.push_back(onsager_generator(m, s));
    for (int s = 0; s <= r; ++s)
      for (int t = 0; t <= r; ++t) {
        if (s == t) continue;
        OperatorSum lhs = nested_commutator(gens[s], gens[t], 3);
        OperatorSum rhs = scale(commutator(gens[s], gens[t]), 16.0);
        out.push_back(make_report("onsager", detail::label("dolan_grady", {{"s", s}, {"t", t}}), "dolan-grady", params,
                                  detail::normalized_gap(lhs, rhs, dense), kDenseTolerance));
      }
    if (r != 1 || depth < 1) continue;
    OnsagerTower tower = onsager_tower(gens[0], gens[1], depth);
    auto gap = [&](const OperatorSum &x, const OperatorSum &y) { return detail::normalized_gap(x, y, dense); };
    for (int a = -depth; a <= depth; ++a)
      for (int b = -depth; b <= depth; ++b) {
        out.push_back(make_report("onsager", detail::label("tower_aa", {{"m", a}, {"n", b}}), "onsager-tower", params,
                                  gap(commutator(tower.a.at(a), tower.a.at(b)), scale(tower.g.at(a - b), 4.0)),
                                  kDenseTolerance));
        out.push_back(make_report(
            "onsager", detail::label("tower_ga", {{"m", a}, {"n", b}}), "onsager-tower", params,
            gap(commutator(tower.g.at(a), tower.a.at(b)), scale(subtract(tower.a.at(b + a), tower.a.at(b - a)), 2.0)),
            kDenseTolerance));
        out.push_back(make_report("onsager", detail::label("tower_gg", {{"m", a}, {"n", b}}), "onsager-tower", params,
                                  gap(commutator(tower.g.at(a), tower.g.at(b)), OperatorSum(m.q, m.L)),
                                  kDenseTolerance));
      }
    if (m.q != 2) continue;
    OperatorSum h01 = commuting_charge(m, 0, 1);
    for (int a = -depth; a <= depth; ++a) {
      OperatorSum zero(m.q, m.L);
      out.push_back(make_report("onsager", detail::label("charge_vs_A", {{"m", a}}), "onsager-charge", params,
                                gap(commutator(h01, tower.a.at(a)), zero), kDenseTolerance));
      out.push_back(make_report("onsager", detail::label("charge_vs_G", {{"m", a}}), "onsager-charge", params,
                                gap(commutator(h01, tower.g.at(a)), zero), kDenseTolerance));
    }
  }
  return out;
}

/// [H^(s,t), A^(s)] = [H^(s,t), A^(t)] = 0 for all 0 <= s < t <= r (Q = 2 models).
inline std::vector<VerificationReport> verify_commuting_charges(const ModelSpec &model) {
  std::vector<VerificationReport> out;
  for (const ModelSpec &m : detail::constituent_models(model)) {
    if (m.q != 2) continue;
    m.require_onsager_divisibility();
    const int r = m.range();
    nlohmann::json params = to_json(m);
    std::vector<OperatorSum> gens;
    for (int s = 0; s <= r; ++s) gens.push_back(onsager_generator(m, s));
    int count = 0;
    for (int s = 0; s <= r; ++s)
      for (int t = s + 1; t <= r; ++t) {
        ++count;
        OperatorSum h = commuting_charge(m, s, t);
        for (int which : {s, t}) {
          OperatorSum c = commutator(h, gens[which]);
          out.push_back(make_report("charges", detail::label("commute", {{"s", s}, {"t", t}, {"with", which}}),
                                    "commuting-charges", params, c.frobenius_norm() / std::max(1.0, h.frobenius_norm()),
                                    kSymbolicTolerance));
        }
      }
    auto p = params;
    p["pairs_s_lt_t"] = count;
    p["pairs_s_le_t"] = (r + 1) * (r + 2) / 2;
    out.push_back(make_report("charges", "count", "commuting-charges", p, 0.0, 0.0));
  }
  return out;
}

/**
 * [h_j, h~_k] = 0 for all j, k; CT(h_j) = h~_{j-r}; [H, H~] = 0. Q = 2 kinds
 * with a dual representation only.
 */
inline std::vector<VerificationReport> verify_duality(const ModelSpec &model) {
  model.validate();
  if (model.q != 2 || model.kind == ModelKind::kTfim) throw ConfigError("duality needs a Fendley or FF8V model");
  std::vector<VerificationReport> out;
  ModelSpec m = model;
  if (m.kind == ModelKind::kFendleyDual || m.kind == ModelKind::kFendleyMixed) m.kind = ModelKind::kFendley;
  const int L = m.L;
  const int r = m.range();
  const nlohmann::json params = to_json(m);
  for (int j = 1; j <= L; ++j)
    for (int k = 1; k <= L; ++k) {
      int power = exchange_power(gca_generator(m, j).terms().front(), dual_generator(m, k).terms().front());
      out.push_back(make_report("duality", detail::label("commute", {{"j", j}, {"k", k}}), "dual-commutation", params,
                                power == 0 ? 0.0 : 2.0, 0.0));
    }
  for (int j = 1; j <= L; ++j) {
    OperatorSum image = clifford_transform(gca_generator(m, j), r);
    OperatorSum expected = dual_generator(m, detail::wrap_label(j - r, L));
    out.push_back(make_report("duality", detail::label("clifford", {{"j", j}}), "clifford-transformation", params,
                              max_deviation(image, expected), kSymbolicTolerance));
  }
  ModelSpec homogeneous = m;
  homogeneous.boundary = Boundary::kPeriodic;
  homogeneous.couplings.clear();
  homogeneous.theta = 0.0;
  homogeneous.lambda = 1.0;
  OperatorSum h = hamiltonian(homogeneous);
  OperatorSum hd(2, L);
  for (int j = 1; j <= L; ++j) hd = add(hd, dual_generator(m, j));
  OperatorSum c = commutator(h, hd);
  out.push_back(make_report("duality", "hamiltonian_commute", "dual-commutation", params,
                            c.frobenius_norm() / (h.frobenius_norm() * hd.frobenius_norm()), kDenseTolerance));
  return out;
}

/// Every applicable suite in a fixed order.
inline std::vector<VerificationReport> verify_all(const ModelSpec &m, int depth = 3) {
  std::vector<VerificationReport> out = verify_gca(m);
  auto append = [&](std::vector<VerificationReport> part) { out.insert(out.end(), part.begin(), part.end()); };
  append(verify_gtl(m));
  if (m.generator_count() % (m.range() + 1) == 0 && m.kind != ModelKind::kFendleyMixed) {
    append(verify_onsager(m, depth));
    append(verify_commuting_charges(m));
  } else if (m.kind == ModelKind::kFendleyMixed && m.L % (m.r + 1) == 0) {
    append(verify_onsager(m, depth));
    append(verify_commuting_charges(m));
  }
  if (m.q == 2 && m.kind != ModelKind::kTfim) append(verify_duality(m));
  return out;
}

}  // namespace onsager

#endif  // ONSAGER_VERIFIER_HPP
