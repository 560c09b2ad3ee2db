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

#ifndef ONSAGER_MODEL_HPP
#define ONSAGER_MODEL_HPP

#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "onsager/clock_string.hpp"
#include "onsager/errors.hpp"
#include "onsager/operator_sum.hpp"

namespace onsager {

enum class ModelKind { kTfim, kFf8v, kFendley, kFendleyDual, kFendleyMixed, kChiralPotts, kCpfm };
enum class Boundary { kPeriodic, kOpen };

/// Overall factor of the commuting charges H^(s,t): i/2 (default) or i/4.
enum class ChargePrefactor { kHalf, kQuarter };

inline std::string to_string(ModelKind k) {
  switch (k) {
    case ModelKind::kTfim: return "TFIM";
    case ModelKind::kFf8v: return "FF8V";
    case ModelKind::kFendley: return "FENDLEY";
    case ModelKind::kFendleyDual: return "FENDLEY_DUAL";
    case ModelKind::kFendleyMixed: return "FENDLEY_MIXED";
    case ModelKind::kChiralPotts: return "CHIRAL_POTTS";
    case ModelKind::kCpfm: return "CPFM";
  }
  return "?";
}

inline ModelKind model_kind_from_string(const std::string &s) {
  static const std::map<std::string, ModelKind> kinds = {
      {"TFIM", ModelKind::kTfim},           {"FF8V", ModelKind::kFf8v},
      {"FENDLEY", ModelKind::kFendley},     {"FENDLEY_DUAL", ModelKind::kFendleyDual},
      {"FENDLEY_MIXED", ModelKind::kFendleyMixed}, {"CHIRAL_POTTS", ModelKind::kChiralPotts},
      {"CPFM", ModelKind::kCpfm}};
  auto it = kinds.find(s);
  if (it == kinds.end()) throw ModelKindError("unknown model kind '" + s + "'");
  return it->second;
}

inline std::string to_string(Boundary b) { return b == Boundary::kPeriodic ? "periodic" : "open"; }

inline Boundary boundary_from_string(const std::string &s) {
  if (s == "periodic") return Boundary::kPeriodic;
  if (s == "open") return Boundary::kOpen;
  throw ConfigError("unknown boundary '" + s + "'");
}

/**
 * Model description. TFIM and CHIRAL_POTTS use the doubled labeling with
 * N = 2L generators on L sites; every other kind has N = L.
 */
struct ModelSpec {
  ModelKind kind = ModelKind::kFendley;
  int L = 6;
  int r = 2;
  int q = 2;
  Boundary boundary = Boundary::kPeriodic;
  std::vector<double> couplings;
  double lambda = 1.0;
  double theta = 0.0;

  bool doubled() const { return kind == ModelKind::kTfim || kind == ModelKind::kChiralPotts; }
  bool pauli() const { return kind != ModelKind::kChiralPotts && kind != ModelKind::kCpfm; }
  int generator_count() const { return doubled() ? 2 * L : L; }

  /// Range parameter of the generator algebra.
  int range() const { return (doubled() || kind == ModelKind::kFf8v) ? 1 : r; }

  /// k with h_j h_{j+m} = omega^k h_{j+m} h_j for 1 <= m <= r. The clock
  /// matrices give omega-bar for the chiral kinds, i.e. k = Q - 1.
  int exchange_power() const { return pauli() ? 1 : q - 1; }

  void validate() const {
    if (L < 1) throw ConfigError("L must be >= 1");
    if (q < 2) throw ConfigError("Q must be >= 2");
    if (pauli() && q != 2) throw ConfigError(to_string(kind) + " requires Q = 2");
    if (r < 1) throw ConfigError("r must be >= 1");
    if ((doubled() || kind == ModelKind::kFf8v) && r != 1) throw ConfigError(to_string(kind) + " requires r = 1");
    if (!std::isfinite(lambda) || !std::isfinite(theta)) throw ConfigError("lambda and theta must be finite");
    for (double c : couplings)
      if (!std::isfinite(c)) throw ConfigError("couplings must be finite");
  }

  void require_onsager_divisibility() const {
    validate();
    if (generator_count() % (range() + 1) != 0)
      throw ConfigError("generator count " + std::to_string(generator_count()) + " is not divisible by r+1 = " +
                        std::to_string(range() + 1));
  }
};

namespace detail {

inline void check_generator_index(const ModelSpec &m, int j) {
  if (j < 1 || j > m.generator_count())
    throw ConfigError("generator index " + std::to_string(j) + " outside [1," + std::to_string(m.generator_count()) +
                      "]");
}

/// 1-based periodic generator label.
inline int wrap_label(int j, int n) { return ((j - 1) % n + n) % n + 1; }

/// sigma^y at j, sigma^x on the next `tail` sites (or the mirror image when `dual`).
inline ClockString fendley_string(int L, int j, int tail, bool dual) {
  std::vector<std::pair<int, char>> letters;
  for (int k = 0; k <= tail; ++k) {
    bool special = dual ? (k == tail) : (k == 0);
    letters.emplace_back((j - 1 + k) % L, special ? 'Y' : 'X');
  }
  return ClockString::pauli(L, letters);
}

inline Complex clock_weight(int q, int a) { return 1.0 / (1.0 - omega_power(q, -a)); }

/// sum_{a=1}^{Q-1} h^a / (1 - omega^{-a}); reduces to h/2 at Q = 2.
inline OperatorSum clock_series(const ClockString &h) {
  OperatorSum out(h.q, h.n);
  ClockString p = ClockString::identity(h.q, h.n);
  for (int a = 1; a < h.q; ++a) {
    p = multiply(p, h);
    out = add(out, scale(OperatorSum(p), clock_weight(h.q, a)));
  }
  return out;
}

inline ClockString generator_string(const ModelSpec &m, int j) {
  check_generator_index(m, j);
  const int L = m.L;
  switch (m.kind) {
    case ModelKind::kTfim:
      if (j % 2 == 1) return ClockString::pauli(L, {{(j - 1) / 2, 'Z'}});
      return ClockString::pauli(L, {{j / 2 - 1, 'X'}, {(j / 2) % L, 'X'}});
    case ModelKind::kFf8v:
      return fendley_string(L, j, 1, false);
    case ModelKind::kFendley:
      return fendley_string(L, j, m.r, false);
    case ModelKind::kFendleyDual:
      return fendley_string(L, j, m.r, true);
    case ModelKind::kChiralPotts: {
      if (j % 2 == 1) return ClockString::clock_z(m.q, L, (j - 1) / 2);
      ClockString s(m.q, L);
      int i = j / 2 - 1;
      s.set_x(i, 1);
      s.set_x(i + 1, m.q - 1);
      if (L == 1) throw ConfigError("chiral Potts needs L >= 2");
      return s;
    }
    case ModelKind::kCpfm: {
      if (m.r >= L) throw ConfigError("CPFM needs r < L");
      ClockString s(m.q, L);
      for (int k = 0; k < m.r; ++k) s.set_x(j - 1 + k, 1);
      s.set_z(j - 1 + m.r, 1);
      return s;
    }
    case ModelKind::kFendleyMixed:
      break;
  }
  throw ConfigError("no single-string generator for " + to_string(m.kind));
}

}  // namespace detail

/// Generator h_j of the generalized Clifford algebra, j in [1, N].
inline OperatorSum gca_generator(const ModelSpec &m, int j) {
  m.validate();
  if ((m.kind == ModelKind::kFendley || m.kind == ModelKind::kFendleyDual) && m.r >= m.L)
    throw ConfigError("Fendley strings need r < L");
  if (m.kind == ModelKind::kFf8v && m.L < 2) throw ConfigError("FF8V needs L >= 2");
  if (m.kind == ModelKind::kTfim && m.L < 2) throw ConfigError("TFIM needs L >= 2");
  return OperatorSum(detail::generator_string(m, j));
}

/// Dual generator: sigma^x ... sigma^x sigma^y (Fendley) or sigma^x_j sigma^y_{j+1} (FF8V).
inline OperatorSum dual_generator(const ModelSpec &m, int j) {
  m.validate();
  detail::check_generator_index(m, j);
  switch (m.kind) {
    case ModelKind::kFf8v:
      if (m.L < 2) throw ConfigError("FF8V needs L >= 2");
      return OperatorSum(detail::fendley_string(m.L, j, 1, true));
    case ModelKind::kFendley:
    case ModelKind::kFendleyDual:
    case ModelKind::kFendleyMixed:
      if (m.r >= m.L) throw ConfigError("Fendley strings need r < L");
      return OperatorSum(detail::fendley_string(m.L, j, m.r, true));
    default:
      break;
  }
  throw ConfigError("no dual representation for " + to_string(m.kind));
}

/**
 * Temperley-Lieb generator. Q = 2: (1 + h_j)/sqrt(2), k ignored.
 * Q > 2: e^(k)_j = Q^{-1/2} sum_{a=1}^{Q} (omega^k h_j)^a with 1 <= k <= Q-1.
 */
inline OperatorSum tl_generator(const ModelSpec &m, int j, std::optional<int> k = std::nullopt) {
  OperatorSum h = gca_generator(m, j);
  const int q = m.q;
  if (q == 2) return scale(add(OperatorSum::identity(2, h.n()), h), 1.0 / std::sqrt(2.0));
  if (!k || *k < 1 || *k > q - 1) throw ConfigError("TL generator needs 1 <= k <= Q-1");
  const ClockString &s = h.terms().front();
  OperatorSum out(q, s.n);
  ClockString p = ClockString::identity(q, s.n);
  for (int a = 1; a <= q; ++a) {
    p = multiply(p, s);
    ClockString t = p;
    t.coeff *= omega_power(q, static_cast<long long>(*k) * a);
    out = add(out, OperatorSum(t));
  }
  return scale(out, 1.0 / std::sqrt(static_cast<double>(q)));
}

/// 1-based generator label of the j-th member of family s: (r+1)(j-1) + s + 1.
inline int onsager_label(const ModelSpec &m, int s, int j) { return (m.range() + 1) * (j - 1) + s + 1; }

/**
 * A^(s) = (4/Q) sum_j sum_{a=1}^{Q-1} h^a / (1 - omega^{-a}) over the labels of
 * family s; for Q = 2 this is sum_j h.
 */
inline OperatorSum onsager_generator(const ModelSpec &m, int s) {
  m.require_onsager_divisibility();
  if (m.kind == ModelKind::kFendleyMixed) throw ConfigError("FENDLEY_MIXED has no Onsager generators");
  const int r = m.range();
  if (s < 0 || s > r) throw ConfigError("Onsager family index must satisfy 0 <= s <= r");
  const int blocks = m.generator_count() / (r + 1);
  OperatorSum out(m.q, m.L);
  for (int j = 1; j <= blocks; ++j) {
    ClockString h = gca_generator(m, onsager_label(m, s, j)).terms().front();
    out = add(out, detail::clock_series(h));
  }
  return scale(out, 4.0 / m.q);
}

/**
 * H^(s,t) = c sum_j ( h_{p_s(j)} h_{p_t(j)} + h_{p_t(j)} h_{p_s(j+1)} ),
 * with p_s(j) the labels of family s and c = i/2 (or i/4).
 */
inline OperatorSum commuting_charge(const ModelSpec &m, int s, int t, ChargePrefactor pref = ChargePrefactor::kHalf) {
  m.require_onsager_divisibility();
  if (m.q != 2) throw ConfigError("commuting charges are built for Q = 2");
  if (m.kind == ModelKind::kFendleyMixed) throw ConfigError("FENDLEY_MIXED has no commuting charges");
  const int r = m.range();
  if (!(0 <= s && s < t && t <= r)) throw ConfigError("commuting charge needs 0 <= s < t <= r");
  const int n = m.generator_count();
  const int blocks = n / (r + 1);
  OperatorSum out(2, m.L);
  for (int j = 1; j <= blocks; ++j) {
    OperatorSum hs = gca_generator(m, onsager_label(m, s, j));
    OperatorSum ht = gca_generator(m, onsager_label(m, t, j));
    OperatorSum hs_next = gca_generator(m, detail::wrap_label(onsager_label(m, s, j + 1), n));
    out = add(out, add(multiply(hs, ht), multiply(ht, hs_next)));
  }
  Complex c = pref == ChargePrefactor::kHalf ? Complex(0.0, 0.5) : Complex(0.0, 0.25);
  return scale(out, c);
}

namespace detail {

/// Per-term weights: empty -> 1, length `terms` -> per term, length r+1 -> periodic pattern.
inline std::vector<double> expand_couplings(const ModelSpec &m, int terms) {
  if (m.couplings.empty()) return std::vector<double>(static_cast<std::size_t>(terms), 1.0);
  const int len = static_cast<int>(m.couplings.size());
  if (len == terms) return m.couplings;
  if (m.boundary == Boundary::kPeriodic && len == m.r + 1 && terms % (m.r + 1) == 0) {
    std::vector<double> w(static_cast<std::size_t>(terms));
    for (int j = 0; j < terms; ++j) w[j] = m.couplings[j % (m.r + 1)];
    return w;
  }
  throw ConfigError("coupling list has length " + std::to_string(len) + ", expected " + std::to_string(terms) +
                    (m.boundary == Boundary::kPeriodic ? " or r+1" : ""));
}

inline OperatorSum fendley_family_sum(const ModelSpec &m, bool dual) {
  const int terms = m.boundary == Boundary::kPeriodic ? m.L : m.L - m.r;
  if (terms < 1) throw ConfigError("open chain shorter than one term");
  auto w = expand_couplings(m, terms);
  OperatorSum out(2, m.L);
  for (int j = 1; j <= terms; ++j) {
    ClockString s = fendley_string(m.L, j, m.r, dual);
    s.coeff *= w[j - 1];
    out = add(out, OperatorSum(s));
  }
  return out;
}

}  // namespace detail

/// Model Hamiltonian as an operator sum.
inline OperatorSum hamiltonian(const ModelSpec &m) {
  m.validate();
  const int L = m.L;
  const bool open = m.boundary == Boundary::kOpen;
  switch (m.kind) {
    case ModelKind::kTfim: {
      if (!m.couplings.empty()) throw ConfigError("TFIM takes lambda, not couplings");
      OperatorSum out(2, L);
      for (int j = 1; j <= L; ++j) {
        out = add(out, scale(gca_generator(m, 2 * j - 1), m.lambda));
        if (!(open && j == L)) out = add(out, gca_generator(m, 2 * j));
      }
      return out;
    }
    case ModelKind::kFf8v: {
      const int terms = open ? L - 1 : L;
      std::vector<double> w = m.couplings.empty() ? std::vector<double>(static_cast<std::size_t>(terms), 1.0)
                                                  : m.couplings;
      if (static_cast<int>(w.size()) != terms)
        throw ConfigError("FF8V coupling list must have " + std::to_string(terms) + " entries");
      OperatorSum out(2, L);
      const double c = std::cos(m.theta), s = std::sin(m.theta);
      for (int j = 1; j <= terms; ++j) {
        double weight = w[j - 1] * (j % 2 == 1 ? m.lambda : 1.0);
        OperatorSum term = add(scale(gca_generator(m, j), c), scale(dual_generator(m, j), s));
        out = add(out, scale(term, weight));
      }
      return out;
    }
    case ModelKind::kFendley:
      if (m.r >= L) throw ConfigError("Fendley strings need r < L");
      return detail::fendley_family_sum(m, false);
    case ModelKind::kFendleyDual:
      if (m.r >= L) throw ConfigError("Fendley strings need r < L");
      return detail::fendley_family_sum(m, true);
    case ModelKind::kFendleyMixed:
      if (m.r >= L) throw ConfigError("Fendley strings need r < L");
      return add(scale(detail::fendley_family_sum(m, false), std::cos(m.theta)),
                 scale(detail::fendley_family_sum(m, true), std::sin(m.theta)));
    case ModelKind::kChiralPotts: {
      if (!m.couplings.empty()) throw ConfigError("CHIRAL_POTTS takes lambda, not couplings");
      OperatorSum out(m.q, L);
      for (int j = 1; j <= L; ++j) {
        out = add(out, scale(detail::clock_series(gca_generator(m, 2 * j - 1).terms().front()), m.lambda));
        if (!(open && j == L)) out = add(out, detail::clock_series(gca_generator(m, 2 * j).terms().front()));
      }
      return out;
    }
    case ModelKind::kCpfm: {
      if (m.r >= L) throw ConfigError("CPFM needs r < L");
      OperatorSum out(m.q, L);
      if (open) {
        // Open chain: plain sum of the strings, generally non-Hermitian.
        auto w = detail::expand_couplings(m, L - m.r);
        for (int j = 1; j <= L - m.r; ++j) out = add(out, scale(gca_generator(m, j), w[j - 1]));
        return out;
      }
      auto w = detail::expand_couplings(m, L);
      for (int j = 1; j <= L; ++j)
        out = add(out, scale(detail::clock_series(gca_generator(m, j).terms().front()), w[j - 1]));
      return out;
    }
  }
  throw ModelKindError("unsupported model kind");
}

/**
 * Clifford transformation with range r on Q = 2 operators:
 * sigma^y_j -> sigma^x_{j-r} ... sigma^x_{j-1} sigma^y_j sigma^x_{j+1} ... sigma^x_{j+r},
 * sigma^x_j -> sigma^x_j, extended multiplicatively (Z = -i X Y).
 */
inline OperatorSum clifford_transform(const OperatorSum &a, int r) {
  if (a.q() != 2) throw DimensionError("Clifford transformation requires Q = 2");
  const int n = a.n();
  if (2 * r + 1 > n) throw DimensionError("Clifford transformation range exceeds the chain");
  auto image_y = [&](int j) {
    std::vector<std::pair<int, char>> letters;
    for (int k = -r; k <= r; ++k) letters.emplace_back(j + k, k == 0 ? 'Y' : 'X');
    return ClockString::pauli(n, letters);
  };
  std::vector<ClockString> out;
  for (const auto &t : a.terms()) {
    ClockString acc(2, n, t.coeff);
    for (int j = 0; j < n; ++j) {
      if (t.x[j]) acc = multiply(acc, ClockString::pauli(n, {{j, 'X'}}));
      if (t.z[j]) {
        ClockString zj = multiply(ClockString::pauli(n, {{j, 'X'}}, Complex(0.0, -1.0)), image_y(j));
        acc = multiply(acc, zj);
      }
    }
    out.push_back(acc);
  }
  return OperatorSum(2, n, std::move(out), a.tolerance());
}

/// Onsager tower {A_m, G_m} for |m| <= extent, keyed by m.
struct OnsagerTower {
  int depth = 0;
  std::map<int, OperatorSum> a;
  std::map<int, OperatorSum> g;
};

/**
 * G_1 = [A_1, A_0]/4, A_{m+1} = A_{m-1} + [G_1, A_m]/2, A_{-m-1} = A_{-m+1} - [G_1, A_{-m}]/2,
 * G_m = [A_m, A_0]/4. A and G are generated up to |m| = 2 depth so that every
 * relation among labels |m|, |n| <= depth can be checked.
 */
inline OnsagerTower onsager_tower(const OperatorSum &a0, const OperatorSum &a1, int depth) {
  if (depth < 1) throw ConfigError("tower depth must be >= 1");
  require_compatible(a0, a1);
  OnsagerTower t;
  t.depth = depth;
  const int extent = 2 * depth;
  t.a.emplace(0, a0);
  t.a.emplace(1, a1);
  OperatorSum g1 = scale(commutator(a1, a0), 0.25);
  for (int m = 1; m < extent; ++m)
    t.a.emplace(m + 1, add(t.a.at(m - 1), scale(commutator(g1, t.a.at(m)), 0.5)));
  for (int m = 0; m < extent; ++m)
    t.a.emplace(-m - 1, subtract(t.a.at(-m + 1), scale(commutator(g1, t.a.at(-m)), 0.5)));
  for (int m = -extent; m <= extent; ++m) t.g.emplace(m, scale(commutator(t.a.at(m), a0), 0.25));
  return t;
}

}  // namespace onsager

#endif  // ONSAGER_MODEL_HPP
