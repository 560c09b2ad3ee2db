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

#ifndef ONSAGER_CLOCK_STRING_HPP
#define ONSAGER_CLOCK_STRING_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "onsager/errors.hpp"

namespace onsager {

using Complex = std::complex<double>;

/// omega^k with omega = exp(2 pi i / q). Quarter turns are returned exactly.
inline Complex omega_power(int q, long long k) {
  long long m = ((k % q) + q) % q;
  if (m == 0) return {1.0, 0.0};
  if ((4 * m) % q == 0) {
    switch ((4 * m) / q) {
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      case 3: return {0.0, -1.0};
      default: break;
    }
  }
  double angle = 2.0 * std::numbers::pi * static_cast<double>(m) / q;
  return {std::cos(angle), std::sin(angle)};
}

/**
 * A single Z_Q Weyl monomial coeff * prod_j X_j^{x_j} Z_j^{z_j}.
 *
 * Per site the normal order is X^x Z^z with X|k> = |k-1>, Z|k> = omega^k |k>,
 * so that X Z = omega Z X. For Q = 2 the Pauli matrices are
 * sigma^x = X, sigma^z = Z, sigma^y = i X Z.
 */
struct ClockString {
  int q = 2;
  int n = 1;
  std::vector<std::uint8_t> x;
  std::vector<std::uint8_t> z;
  Complex coeff{1.0, 0.0};

  ClockString() : x(1, 0), z(1, 0) {}
  ClockString(int q_, int n_, Complex c = 1.0)
      : q(q_), n(n_), x(static_cast<std::size_t>(n_), 0), z(static_cast<std::size_t>(n_), 0), coeff(c) {
    if (q_ < 2) throw DimensionError("clock order must be >= 2");
    if (n_ < 1) throw DimensionError("site count must be >= 1");
    if (q_ > 255) throw DimensionError("clock order must be <= 255");
  }

  static ClockString identity(int q, int n) { return ClockString(q, n); }

  /// X^a at a 0-based site.
  static ClockString clock_x(int q, int n, int site, int power = 1) {
    ClockString s(q, n);
    s.set_x(site, power);
    return s;
  }
  static ClockString clock_z(int q, int n, int site, int power = 1) {
    ClockString s(q, n);
    s.set_z(site, power);
    return s;
  }

  /**
   * Pauli word from (0-based site, letter) pairs, letters in {I,X,Y,Z}.
   * Sites must be distinct.
   */
  static ClockString pauli(int n, const std::vector<std::pair<int, char>> &letters, Complex c = 1.0) {
    ClockString s(2, n, c);
    for (const auto &[site, letter] : letters) {
      int k = s.wrap(site);
      if (s.x[k] || s.z[k]) throw DimensionError("repeated site in Pauli word");
      switch (letter) {
        case 'I': break;
        case 'X': s.x[k] = 1; break;
        case 'Z': s.z[k] = 1; break;
        case 'Y':
          s.x[k] = 1;
          s.z[k] = 1;
          s.coeff *= Complex(0.0, 1.0);
          break;
        default: throw DimensionError(std::string("unknown Pauli letter ") + letter);
      }
    }
    return s;
  }

  int wrap(int site) const { return ((site % n) + n) % n; }
  void set_x(int site, int power) { x[wrap(site)] = static_cast<std::uint8_t>(((power % q) + q) % q); }
  void set_z(int site, int power) { z[wrap(site)] = static_cast<std::uint8_t>(((power % q) + q) % q); }

  bool is_identity() const {
    for (int k = 0; k < n; ++k)
      if (x[k] || z[k]) return false;
    return true;
  }

  /// Number of sites carrying a non-identity factor.
  int weight() const {
    int w = 0;
    for (int k = 0; k < n; ++k) w += (x[k] || z[k]) ? 1 : 0;
    return w;
  }

  bool same_operator(const ClockString &o) const { return q == o.q && n == o.n && x == o.x && z == o.z; }

  /// Concatenated (x, z) exponents; lexicographic order on this key is canonical.
  std::vector<std::uint8_t> key() const {
    std::vector<std::uint8_t> k(x);
    k.insert(k.end(), z.begin(), z.end());
    return k;
  }

  /// Human readable form, e.g. "(1,0)*X0^1 Z2^2".
  std::string str() const {
    std::string out = "(" + std::to_string(coeff.real()) + "," + std::to_string(coeff.imag()) + ")*";
    bool any = false;
    for (int k = 0; k < n; ++k) {
      if (x[k]) {
        out += (any ? " X" : "X") + std::to_string(k) + "^" + std::to_string(x[k]);
        any = true;
      }
      if (z[k]) {
        out += (any ? " Z" : "Z") + std::to_string(k) + "^" + std::to_string(z[k]);
        any = true;
      }
    }
    if (!any) out += "I";
    return out;
  }
};

inline void require_compatible(const ClockString &a, const ClockString &b) {
  if (a.q != b.q || a.n != b.n)
    throw DimensionError("clock strings differ in (Q,N): (" + std::to_string(a.q) + "," + std::to_string(a.n) +
                         ") vs (" + std::to_string(b.q) + "," + std::to_string(b.n) + ")");
}

/// Exponent k of the phase picked up by the normal-ordered product a*b.
inline int product_phase_power(const ClockString &a, const ClockString &b) {
  long long k = 0;
  for (int j = 0; j < a.n; ++j) k -= static_cast<long long>(a.z[j]) * b.x[j];
  return static_cast<int>(((k % a.q) + a.q) % a.q);
}

/// (X^{x1} Z^{z1})(X^{x2} Z^{z2}) = omega^{-z1 x2} X^{x1+x2} Z^{z1+z2} on every site.
inline ClockString multiply(const ClockString &a, const ClockString &b) {
  require_compatible(a, b);
  ClockString out(a.q, a.n);
  for (int j = 0; j < a.n; ++j) {
    out.x[j] = static_cast<std::uint8_t>((a.x[j] + b.x[j]) % a.q);
    out.z[j] = static_cast<std::uint8_t>((a.z[j] + b.z[j]) % a.q);
  }
  out.coeff = a.coeff * b.coeff * omega_power(a.q, product_phase_power(a, b));
  return out;
}

/// Integer k with a*b = omega^k * b*a, computed without floating point.
inline int exchange_power(const ClockString &a, const ClockString &b) {
  require_compatible(a, b);
  long long k = 0;
  for (int j = 0; j < a.n; ++j)
    k += static_cast<long long>(b.z[j]) * a.x[j] - static_cast<long long>(a.z[j]) * b.x[j];
  return static_cast<int>(((k % a.q) + a.q) % a.q);
}

inline ClockString power(const ClockString &a, int k) {
  if (k < 0) throw DimensionError("negative power of a clock string");
  ClockString out = ClockString::identity(a.q, a.n);
  for (int i = 0; i < k; ++i) out = multiply(out, a);
  return out;
}

/// Hermitian conjugate: (c X^x Z^z)^dagger = conj(c) omega^{-x z} X^{-x} Z^{-z}.
inline ClockString adjoint(const ClockString &a) {
  ClockString out(a.q, a.n);
  long long k = 0;
  for (int j = 0; j < a.n; ++j) {
    out.x[j] = static_cast<std::uint8_t>((a.q - a.x[j]) % a.q);
    out.z[j] = static_cast<std::uint8_t>((a.q - a.z[j]) % a.q);
    k -= static_cast<long long>(a.x[j]) * a.z[j];
  }
  out.coeff = std::conj(a.coeff) * omega_power(a.q, k);
  return out;
}

/// Relabel sites j -> j + shift (mod N).
inline ClockString translate(const ClockString &a, int shift) {
  ClockString out(a.q, a.n, a.coeff);
  for (int j = 0; j < a.n; ++j) {
    int t = a.wrap(j + shift);
    out.x[t] = a.x[j];
    out.z[t] = a.z[j];
  }
  return out;
}

}  // namespace onsager

#endif  // ONSAGER_CLOCK_STRING_HPP
