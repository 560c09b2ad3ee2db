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

#ifndef ONSAGER_OPERATOR_SUM_HPP
#define ONSAGER_OPERATOR_SUM_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "onsager/clock_string.hpp"
#include "onsager/errors.hpp"

namespace onsager {

inline constexpr double kDefaultPruneTolerance = 1e-14;

/**
 * Canonical linear combination of clock strings on a common (Q, N).
 *
 * Terms are merged, pruned below the tolerance and sorted lexicographically
 * by their (x, z) exponent arrays, so two equal sums are structurally equal.
 */
class OperatorSum {
 public:
  OperatorSum() : OperatorSum(2, 1) {}
  OperatorSum(int q, int n, double tolerance = kDefaultPruneTolerance) : q_(q), n_(n), tolerance_(tolerance) {
    ClockString probe(q, n);
    (void)probe;
  }
  explicit OperatorSum(const ClockString &s, double tolerance = kDefaultPruneTolerance)
      : q_(s.q), n_(s.n), tolerance_(tolerance) {
    if (std::abs(s.coeff) > tolerance_) terms_.push_back(s);
  }
  OperatorSum(int q, int n, std::vector<ClockString> terms, double tolerance = kDefaultPruneTolerance)
      : q_(q), n_(n), tolerance_(tolerance) {
    for (const auto &t : terms)
      if (t.q != q || t.n != n) throw DimensionError("term (Q,N) differs from the sum");
    terms_ = std::move(terms);
    canonicalize();
  }

  static OperatorSum identity(int q, int n, Complex c = 1.0) { return OperatorSum(ClockString(q, n, c)); }
  static OperatorSum zero(int q, int n) { return OperatorSum(q, n); }

  int q() const { return q_; }
  int n() const { return n_; }
  double tolerance() const { return tolerance_; }
  const std::vector<ClockString> &terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  /// Coefficient of the given exponent pattern (0 when absent).
  Complex coefficient(const ClockString &pattern) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), pattern,
                               [](const ClockString &a, const ClockString &b) { return a.key() < b.key(); });
    if (it != terms_.end() && it->same_operator(pattern)) return it->coeff;
    return 0.0;
  }

  /// Largest |coeff| over the terms.
  double max_abs_coeff() const {
    double m = 0.0;
    for (const auto &t : terms_) m = std::max(m, std::abs(t.coeff));
    return m;
  }

  /// Frobenius norm of the dense realization, sqrt(Q^N sum |c|^2), computed without building it.
  double frobenius_norm() const {
    double s = 0.0;
    for (const auto &t : terms_) s += std::norm(t.coeff);
    return std::sqrt(s * std::pow(static_cast<double>(q_), n_));
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (std::size_t i = 0; i < terms_.size(); ++i) out += (i ? " + " : "") + terms_[i].str();
    return out;
  }

  /// Build from an unsorted accumulation keyed by exponent arrays.
  static OperatorSum from_accumulator(int q, int n, const std::map<std::vector<std::uint8_t>, Complex> &acc,
                                      double tolerance) {
    OperatorSum out(q, n, tolerance);
    out.terms_.reserve(acc.size());
    for (const auto &[key, c] : acc) {
      if (std::abs(c) <= tolerance) continue;
      ClockString s(q, n, c);
      std::copy(key.begin(), key.begin() + n, s.x.begin());
      std::copy(key.begin() + n, key.end(), s.z.begin());
      out.terms_.push_back(std::move(s));
    }
    return out;
  }

 private:
  void canonicalize() {
    std::map<std::vector<std::uint8_t>, Complex> acc;
    for (const auto &t : terms_) acc[t.key()] += t.coeff;
    *this = from_accumulator(q_, n_, acc, tolerance_);
  }

  int q_;
  int n_;
  double tolerance_;
  std::vector<ClockString> terms_;
};

inline void require_compatible(const OperatorSum &a, const OperatorSum &b) {
  if (a.q() != b.q() || a.n() != b.n())
    throw DimensionError("operator sums differ in (Q,N): (" + std::to_string(a.q()) + "," + std::to_string(a.n()) +
                         ") vs (" + std::to_string(b.q()) + "," + std::to_string(b.n()) + ")");
}

inline OperatorSum add(const OperatorSum &a, const OperatorSum &b) {
  require_compatible(a, b);
  std::map<std::vector<std::uint8_t>, Complex> acc;
  for (const auto &t : a.terms()) acc[t.key()] += t.coeff;
  for (const auto &t : b.terms()) acc[t.key()] += t.coeff;
  return OperatorSum::from_accumulator(a.q(), a.n(), acc, std::max(a.tolerance(), b.tolerance()));
}

inline OperatorSum scale(const OperatorSum &a, Complex c) {
  std::vector<ClockString> terms = a.terms();
  for (auto &t : terms) t.coeff *= c;
  return OperatorSum(a.q(), a.n(), std::move(terms), a.tolerance());
}

inline OperatorSum subtract(const OperatorSum &a, const OperatorSum &b) { return add(a, scale(b, -1.0)); }

inline OperatorSum multiply(const OperatorSum &a, const OperatorSum &b) {
  require_compatible(a, b);
  std::map<std::vector<std::uint8_t>, Complex> acc;
  for (const auto &s : a.terms())
    for (const auto &t : b.terms()) {
      ClockString p = multiply(s, t);
      acc[p.key()] += p.coeff;
    }
  return OperatorSum::from_accumulator(a.q(), a.n(), acc, std::max(a.tolerance(), b.tolerance()));
}

inline OperatorSum operator+(const OperatorSum &a, const OperatorSum &b) { return add(a, b); }
inline OperatorSum operator-(const OperatorSum &a, const OperatorSum &b) { return subtract(a, b); }
inline OperatorSum operator*(const OperatorSum &a, const OperatorSum &b) { return multiply(a, b); }
inline OperatorSum operator*(Complex c, const OperatorSum &a) { return scale(a, c); }
inline OperatorSum operator*(const OperatorSum &a, Complex c) { return scale(a, c); }

/// ab - ba, with the exact exchange phase deciding which string products survive.
inline OperatorSum commutator(const OperatorSum &a, const OperatorSum &b) {
  require_compatible(a, b);
  std::map<std::vector<std::uint8_t>, Complex> acc;
  for (const auto &s : a.terms())
    for (const auto &t : b.terms()) {
      int k = exchange_power(s, t);
      if (k == 0) continue;
      ClockString p = multiply(s, t);
      // ab - ba = (1 - omega^{-k}) ab
      acc[p.key()] += p.coeff * (1.0 - omega_power(a.q(), -k));
    }
  return OperatorSum::from_accumulator(a.q(), a.n(), acc, std::max(a.tolerance(), b.tolerance()));
}

inline OperatorSum anticommutator(const OperatorSum &a, const OperatorSum &b) {
  require_compatible(a, b);
  std::map<std::vector<std::uint8_t>, Complex> acc;
  for (const auto &s : a.terms())
    for (const auto &t : b.terms()) {
      int k = exchange_power(s, t);
      if (a.q() == 2 && k == 1) continue;
      ClockString p = multiply(s, t);
      acc[p.key()] += p.coeff * (1.0 + omega_power(a.q(), -k));
    }
  return OperatorSum::from_accumulator(a.q(), a.n(), acc, std::max(a.tolerance(), b.tolerance()));
}

/// ad_a^depth(b) = [a, [a, ... [a, b]]].
inline OperatorSum nested_commutator(const OperatorSum &a, const OperatorSum &b, int depth) {
  if (depth < 1) throw DimensionError("nested commutator depth must be >= 1");
  OperatorSum out = b;
  for (int i = 0; i < depth; ++i) out = commutator(a, out);
  return out;
}

inline OperatorSum adjoint(const OperatorSum &a) {
  std::vector<ClockString> terms;
  terms.reserve(a.size());
  for (const auto &t : a.terms()) terms.push_back(adjoint(t));
  return OperatorSum(a.q(), a.n(), std::move(terms), a.tolerance());
}

/// a^k by repeated multiplication.
inline OperatorSum power(const OperatorSum &a, int k) {
  if (k < 0) throw DimensionError("negative power of an operator sum");
  OperatorSum out = OperatorSum::identity(a.q(), a.n());
  for (int i = 0; i < k; ++i) out = multiply(out, a);
  return out;
}

/// Largest coefficient of a - b.
inline double max_deviation(const OperatorSum &a, const OperatorSum &b) {
  require_compatible(a, b);
  std::map<std::vector<std::uint8_t>, Complex> acc;
  for (const auto &t : a.terms()) acc[t.key()] += t.coeff;
  for (const auto &t : b.terms()) acc[t.key()] -= t.coeff;
  double m = 0.0;
  for (const auto &[k, c] : acc) m = std::max(m, std::abs(c));
  return m;
}

inline bool equals(const OperatorSum &a, const OperatorSum &b, double tol) {
  if (a.q() != b.q() || a.n() != b.n()) return false;
  return max_deviation(a, b) <= tol;
}

inline OperatorSum translate(const OperatorSum &a, int shift) {
  std::vector<ClockString> terms;
  terms.reserve(a.size());
  for (const auto &t : a.terms()) terms.push_back(translate(t, shift));
  return OperatorSum(a.q(), a.n(), std::move(terms), a.tolerance());
}

inline nlohmann::json to_json(const OperatorSum &a) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto &t : a.terms()) {
    std::vector<int> x(t.x.begin(), t.x.end()), z(t.z.begin(), t.z.end());
    terms.push_back({{"x", x}, {"z", z}, {"re", t.coeff.real()}, {"im", t.coeff.imag()}});
  }
  return {{"Q", a.q()}, {"N", a.n()}, {"terms", terms}};
}

inline OperatorSum operator_sum_from_json(const nlohmann::json &j) {
  int q = j.at("Q").get<int>();
  int n = j.at("N").get<int>();
  std::vector<ClockString> terms;
  for (const auto &t : j.at("terms")) {
    ClockString s(q, n, Complex(t.at("re").get<double>(), t.at("im").get<double>()));
    auto x = t.at("x").get<std::vector<int>>();
    auto z = t.at("z").get<std::vector<int>>();
    if (static_cast<int>(x.size()) != n || static_cast<int>(z.size()) != n)
      throw DimensionError("exponent array length differs from N");
    for (int k = 0; k < n; ++k) {
      s.set_x(k, x[k]);
      s.set_z(k, z[k]);
    }
    terms.push_back(std::move(s));
  }
  return OperatorSum(q, n, std::move(terms));
}

}  // namespace onsager

#endif  // ONSAGER_OPERATOR_SUM_HPP
