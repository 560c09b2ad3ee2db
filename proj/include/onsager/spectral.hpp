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

#ifndef ONSAGER_SPECTRAL_HPP
#define ONSAGER_SPECTRAL_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <iomanip>
#include <numeric>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "onsager/dense.hpp"
#include "onsager/model.hpp"
#include "onsager/report.hpp"

namespace onsager {

struct SpectrumResult {
  bool hermitian = true;
  std::vector<double> energies;         // ascending, Hermitian case
  std::vector<Complex> complex_values;  // sorted by (re, im), non-Hermitian case
  std::string warning;
};

/// Exact diagonalization of the model Hamiltonian.
inline SpectrumResult spectrum(const ModelSpec &m, std::size_t cap = kDefaultDenseCap) {
  ComplexMatrix h = to_dense(hamiltonian(m), cap);
  SpectrumResult out;
  if (hermiticity_defect(h) > 1e-10 * std::max(1.0, h.norm())) {
    out.hermitian = false;
    out.complex_values = general_eigenvalues(h);
    out.warning = "Hamiltonian is not Hermitian; general eigenvalue path used";
    return out;
  }
  RealVector ev = hermitian_eigs(h, false).values;
  out.energies.assign(ev.data(), ev.data() + ev.size());
  return out;
}

struct Degeneracy {
  double value;
  int multiplicity;
};

/// Default clustering tolerance 1e-8 max(1, ||H||_2) for a sorted spectrum.
inline double default_degeneracy_tolerance(const std::vector<double> &eigs) {
  double norm = 0.0;
  for (double e : eigs) norm = std::max(norm, std::abs(e));
  return 1e-8 * std::max(1.0, norm);
}

/// Merge consecutive sorted values closer than tol; cluster value is the mean.
inline std::vector<Degeneracy> degeneracies(const std::vector<double> &eigs, double tol) {
  std::vector<Degeneracy> out;
  std::size_t i = 0;
  while (i < eigs.size()) {
    std::size_t j = i + 1;
    double sum = eigs[i];
    while (j < eigs.size() && eigs[j] - eigs[j - 1] <= tol) sum += eigs[j++];
    out.push_back({sum / static_cast<double>(j - i), static_cast<int>(j - i)});
    i = j;
  }
  return out;
}

/// Largest |e_k + e_{n-1-k}| of a sorted spectrum (zero when symmetric under E -> -E).
inline double spectral_asymmetry(const std::vector<double> &eigs) {
  double m = 0.0;
  for (std::size_t k = 0; k < eigs.size(); ++k) m = std::max(m, std::abs(eigs[k] + eigs[eigs.size() - 1 - k]));
  return m;
}

/// All 2^m sums of +-eps_k, sorted.
inline std::vector<double> free_spectrum(const std::vector<double> &eps) {
  std::vector<double> sums{0.0};
  for (double e : eps) {
    std::vector<double> next;
    next.reserve(sums.size() * 2);
    for (double s : sums) {
      next.push_back(s - e);
      next.push_back(s + e);
    }
    sums = std::move(next);
  }
  std::sort(sums.begin(), sums.end());
  return sums;
}

inline constexpr int kMaxFreeModes = 14;

/**
 * eps_1..eps_modes >= 0 with {sum_k +-eps_k} equal to the sorted spectrum, or
 * none. The smallest eps is half the lowest gap; pairing each smallest
 * remaining x with x + 2 eps peels that mode off, and the recovered set is
 * validated against the full multiset.
 */
inline std::optional<std::vector<double>> free_spectrum_decomposition(const std::vector<double> &eigs, int modes,
                                                                      double tol = 1e-8) {
  if (modes < 0 || modes > kMaxFreeModes) return std::nullopt;
  if (eigs.size() != (std::size_t{1} << modes)) return std::nullopt;
  std::vector<double> level(eigs);
  std::sort(level.begin(), level.end());
  std::vector<double> eps;
  while (level.size() > 1) {
    const double e = (level[1] - level[0]) / 2.0;
    std::vector<bool> used(level.size(), false);
    std::vector<double> reduced;
    reduced.reserve(level.size() / 2);
    for (std::size_t i = 0; i < level.size(); ++i) {
      if (used[i]) continue;
      used[i] = true;
      const double target = level[i] + 2.0 * e;
      auto it = std::lower_bound(level.begin(), level.end(), target - tol);
      std::size_t k = static_cast<std::size_t>(it - level.begin());
      while (k < level.size() && (used[k] || k == i) && level[k] <= target + tol) ++k;
      if (k >= level.size() || std::abs(level[k] - target) > tol) return std::nullopt;
      used[k] = true;
      reduced.push_back(level[i] + e);
    }
    std::sort(reduced.begin(), reduced.end());
    eps.push_back(e);
    level = std::move(reduced);
  }
  if (std::abs(level.front()) > tol) return std::nullopt;
  std::sort(eps.begin(), eps.end());
  std::vector<double> regenerated = free_spectrum(eps);
  std::vector<double> sorted(eigs);
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t i = 0; i < sorted.size(); ++i)
    if (std::abs(sorted[i] - regenerated[i]) > tol) return std::nullopt;
  return eps;
}

struct FreeSpectrumAttempt {
  int trivial_multiplicity;
  int modes;
  bool found;
  std::vector<double> epsilons;
};

/**
 * Try every uniform trivial multiplicity g (a power of two dividing all
 * cluster multiplicities): divide the multiplicities by g and look for a
 * decomposition with log2(dim/g) modes.
 */
inline std::vector<FreeSpectrumAttempt> free_spectrum_search(const std::vector<double> &eigs, double tol = 1e-8) {
  std::vector<FreeSpectrumAttempt> out;
  if (eigs.empty()) return out;
  auto clusters = degeneracies(eigs, tol);
  int g_all = 0;
  for (const auto &c : clusters) g_all = std::gcd(g_all, c.multiplicity);
  const std::size_t dim = eigs.size();
  for (int g = 1; g <= g_all; g *= 2) {
    if (g_all % g != 0 || dim % static_cast<std::size_t>(g) != 0) continue;
    std::size_t reduced_dim = dim / static_cast<std::size_t>(g);
    if ((reduced_dim & (reduced_dim - 1)) != 0) continue;
    int modes = 0;
    while ((std::size_t{1} << modes) < reduced_dim) ++modes;
    std::vector<double> reduced;
    for (const auto &c : clusters)
      for (int k = 0; k < c.multiplicity / g; ++k) reduced.push_back(c.value);
    auto eps = free_spectrum_decomposition(reduced, modes, std::max(tol, 1e-8));
    out.push_back({g, modes, eps.has_value(), eps.value_or(std::vector<double>{})});
  }
  return out;
}

struct NamedOperator {
  std::string name;
  ComplexMatrix matrix;
};

/**
 * Pairwise commutators: every pair in `commuting` must commute (relative
 * residual <= tol); among `noncommuting`, at least one pair must exceed `floor`.
 */
inline std::vector<VerificationReport> charge_compatibility(const std::vector<NamedOperator> &commuting,
                                                            const std::vector<NamedOperator> &noncommuting,
                                                            double tol = 1e-9, double floor = 1e-6) {
  std::vector<VerificationReport> out;
  for (std::size_t a = 0; a < commuting.size(); ++a)
    for (std::size_t b = a + 1; b < commuting.size(); ++b) {
      const auto &x = commuting[a].matrix;
      const auto &y = commuting[b].matrix;
      double res = commutator(x, y).norm() / std::max(1e-300, x.norm() * y.norm());
      out.push_back(make_report("spectral", "commute:" + commuting[a].name + "," + commuting[b].name,
                                "charge-involution", nlohmann::json::object(), res, tol));
    }
  if (noncommuting.size() >= 2) {
    double best = 0.0;
    std::string best_pair;
    for (std::size_t a = 0; a < noncommuting.size(); ++a)
      for (std::size_t b = a + 1; b < noncommuting.size(); ++b) {
        const auto &x = noncommuting[a].matrix;
        const auto &y = noncommuting[b].matrix;
        double res = commutator(x, y).norm() / std::max(1e-300, x.norm() * y.norm());
        if (res > best) {
          best = res;
          best_pair = noncommuting[a].name + "," + noncommuting[b].name;
        }
      }
    out.push_back(make_lower_bound_report("spectral", "noncommuting_family", "charge-noncommutation",
                                          {{"largest_pair", best_pair}}, best, floor));
  }
  return out;
}

/// CSV "index,energy,multiplicity" with each eigenvalue's cluster multiplicity.
inline void write_spectrum_csv(std::ostream &os, const std::vector<double> &eigs, double tol) {
  os << "index,energy,multiplicity\n" << std::setprecision(15);
  auto clusters = degeneracies(eigs, tol);
  std::size_t idx = 0;
  for (const auto &c : clusters)
    for (int k = 0; k < c.multiplicity; ++k, ++idx) os << idx << ',' << eigs[idx] << ',' << c.multiplicity << '\n';
}

/// CSV "energy,multiplicity", one line per cluster.
inline void write_degeneracy_csv(std::ostream &os, const std::vector<Degeneracy> &clusters) {
  os << "energy,multiplicity\n" << std::setprecision(15);
  for (const auto &c : clusters) os << c.value << ',' << c.multiplicity << '\n';
}

}  // namespace onsager

#endif  // ONSAGER_SPECTRAL_HPP
