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

#include <gtest/gtest.h>

#include <functional>
#include <numbers>
#include <set>
#include <sstream>

#include "onsager/spectral.hpp"

namespace onsager {
namespace {

ModelSpec make(ModelKind kind, int L, int r = 1, int q = 2) {
  ModelSpec m;
  m.kind = kind;
  m.L = L;
  m.r = r;
  m.q = q;
  return m;
}

TEST(Spectrum, TfimTwoSitesWithoutField) {
  ModelSpec m = make(ModelKind::kTfim, 2);
  m.lambda = 0.0;
  SpectrumResult s = spectrum(m);
  ASSERT_TRUE(s.hermitian);
  ASSERT_EQ(s.energies.size(), 4u);
  const double expected[] = {-2.0, -2.0, 2.0, 2.0};
  for (int k = 0; k < 4; ++k) EXPECT_NEAR(s.energies[k], expected[k], 1e-12);
}

TEST(Spectrum, TfimCriticalGroundState) {
  // Antiperiodic fermion modes k = (2n+1) pi / 8 give E0 = -2 sum_n |cos(k/2)|.
  double closed = 0.0;
  for (int n = 0; n < 8; ++n) closed -= 2.0 * std::abs(std::cos((2 * n + 1) * std::numbers::pi / 16.0));
  EXPECT_NEAR(closed, -10.2516617909660, 1e-12);
  SpectrumResult s = spectrum(make(ModelKind::kTfim, 8));
  EXPECT_NEAR(s.energies.front(), closed, 1e-9);
}

TEST(Spectrum, PeriodicFendleyStructure) {
  SpectrumResult s = spectrum(make(ModelKind::kFendley, 6, 2));
  ASSERT_EQ(s.energies.size(), 64u);
  EXPECT_LE(spectral_asymmetry(s.energies), 1e-10);
  double trace = 0.0;
  for (double e : s.energies) trace += e;
  EXPECT_NEAR(trace, 0.0, 1e-10);
  auto clusters = degeneracies(s.energies, default_degeneracy_tolerance(s.energies));
  int total = 0;
  for (const auto &c : clusters) total += c.multiplicity;
  EXPECT_EQ(total, 64);
  EXPECT_EQ(clusters.size(), 7u);
  EXPECT_NEAR(clusters.front().value, -2.0 * std::sqrt(3.0), 1e-10);
  EXPECT_EQ(clusters.front().multiplicity, 4);
  for (double tol : {1e-10, 1e-9, 1e-8, 1e-7, 1e-6}) EXPECT_EQ(degeneracies(s.energies, tol).size(), clusters.size());
}

TEST(Degeneracy, Example) {
  auto c = degeneracies({0.0, 1e-12, 1.0, 2.0, 2.0 + 1e-11, 2.0 + 2e-11}, 1e-8);
  ASSERT_EQ(c.size(), 3u);
  EXPECT_EQ(c[0].multiplicity, 2);
  EXPECT_EQ(c[1].multiplicity, 1);
  EXPECT_EQ(c[2].multiplicity, 3);
  EXPECT_NEAR(c[2].value, 2.0, 1e-10);
  EXPECT_TRUE(degeneracies({}, 1e-8).empty());
}

TEST(FreeSpectrum, Toy) {
  std::vector<double> f = free_spectrum({1.0, 2.0});
  EXPECT_EQ(f, (std::vector<double>{-3.0, -1.0, 1.0, 3.0}));
  auto eps = free_spectrum_decomposition(f, 2);
  ASSERT_TRUE(eps.has_value());
  EXPECT_NEAR((*eps)[0], 1.0, 1e-12);
  EXPECT_NEAR((*eps)[1], 2.0, 1e-12);
  auto same = free_spectrum_decomposition({-2.0, 0.0, 0.0, 2.0}, 2);
  ASSERT_TRUE(same.has_value());
  EXPECT_NEAR((*same)[0], 1.0, 1e-12);
  EXPECT_NEAR((*same)[1], 1.0, 1e-12);
  EXPECT_FALSE(free_spectrum_decomposition({-3.0, -1.0, 1.5, 3.0}, 2).has_value());
  EXPECT_FALSE(free_spectrum_decomposition({-1.0, 1.0}, 2).has_value());
}

/// Sorted {sum_k +-eps_k} repeated g times, by direct enumeration of sign masks.
std::vector<double> enumerate_levels(const std::vector<double> &eps, int g) {
  std::vector<double> out;
  const int m = static_cast<int>(eps.size());
  for (unsigned mask = 0; mask < (1u << m); ++mask) {
    double e = 0.0;
    for (int k = 0; k < m; ++k) e += (mask >> k & 1u) ? eps[k] : -eps[k];
    for (int c = 0; c < g; ++c) out.push_back(e);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool same_levels(const std::vector<double> &a, const std::vector<double> &b, double tol) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::abs(a[i] - b[i]) > tol) return false;
  return true;
}

TEST(FreeSpectrum, OpenFendleyDecomposes) {
  for (int L : {6, 9}) {
    ModelSpec m = make(ModelKind::kFendley, L, 2);
    m.boundary = Boundary::kOpen;
    SpectrumResult s = spectrum(m);
    auto attempts = free_spectrum_search(s.energies);
    const FreeSpectrumAttempt *hit = nullptr;
    for (const auto &a : attempts)
      if (a.found) hit = &a;
    ASSERT_NE(hit, nullptr) << "L=" << L;
    EXPECT_TRUE(same_levels(enumerate_levels(hit->epsilons, hit->trivial_multiplicity), s.energies, 1e-8));
  }
}

TEST(FreeSpectrum, PeriodicFendleyHasNoDecomposition) {
  SpectrumResult s = spectrum(make(ModelKind::kFendley, 6, 2));
  for (const auto &a : free_spectrum_search(s.energies)) EXPECT_FALSE(a.found) << "g=" << a.trivial_multiplicity;

  // Exhaustive: every multiset of mode energies drawn from the half-gaps above the ground state.
  const double tol = 1e-8;
  std::vector<double> cand;
  for (double e : s.energies) {
    double c = (e - s.energies.front()) / 2.0;
    if (c > tol && std::none_of(cand.begin(), cand.end(), [&](double x) { return std::abs(x - c) < tol; }))
      cand.push_back(c);
  }
  ASSERT_FALSE(cand.empty());
  int tried = 0;
  bool any = false;
  for (int g : {1, 2, 4}) {
    int modes = 0;
    while ((64 >> modes) > g) ++modes;
    std::vector<double> pick;
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
      if (static_cast<int>(pick.size()) == modes) {
        ++tried;
        if (same_levels(enumerate_levels(pick, g), s.energies, 1e-7)) any = true;
        return;
      }
      for (std::size_t i = start; i < cand.size(); ++i) {
        pick.push_back(cand[i]);
        rec(i);
        pick.pop_back();
      }
    };
    rec(0);
  }
  EXPECT_GT(tried, 0);
  EXPECT_FALSE(any);
}

TEST(Spectrum, OpenChiralChainIsNotHermitian) {
  ModelSpec m = make(ModelKind::kCpfm, 4, 2, 3);
  m.boundary = Boundary::kOpen;
  SpectrumResult s = spectrum(m);
  EXPECT_FALSE(s.hermitian);
  EXPECT_FALSE(s.warning.empty());
  EXPECT_EQ(s.complex_values.size(), 81u);
  EXPECT_TRUE(s.energies.empty());
}

TEST(Spectrum, PeriodicChiralChainIsHermitian) {
  SpectrumResult s = spectrum(make(ModelKind::kCpfm, 3, 2, 3));
  EXPECT_TRUE(s.hermitian);
  EXPECT_EQ(s.energies.size(), 27u);
}

TEST(Spectrum, CapIsEnforced) { EXPECT_THROW(spectrum(make(ModelKind::kFendley, 6, 2), 32), CapExceeded); }

TEST(Spectrum, MixedAnglesReflect) {
  ModelSpec a = make(ModelKind::kFendleyMixed, 6, 2), b = a;
  a.theta = 0.3;
  b.theta = std::numbers::pi / 2.0 - 0.3;
  auto ea = spectrum(a).energies, eb = spectrum(b).energies;
  EXPECT_TRUE(same_levels(ea, eb, 1e-10));
}

TEST(Compatibility, TfimChargeAgainstGenerators) {
  ModelSpec m = make(ModelKind::kTfim, 4);
  ComplexMatrix h = to_dense(hamiltonian(m));
  ComplexMatrix h01 = to_dense(commuting_charge(m, 0, 1));
  ComplexMatrix a0 = to_dense(onsager_generator(m, 0)), a1 = to_dense(onsager_generator(m, 1));
  auto reports = charge_compatibility({{"H", h}, {"H01", h01}}, {{"A0", a0}, {"A1", a1}});
  ASSERT_EQ(reports.size(), 2u);
  for (const auto &r : reports) EXPECT_TRUE(r.passed) << r.name << " " << r.residual;
  auto bad = charge_compatibility({{"A0", a0}, {"A1", a1}}, {});
  ASSERT_EQ(bad.size(), 1u);
  EXPECT_FALSE(bad[0].passed);
}

TEST(Csv, SpectrumAndDegeneracyFormats) {
  std::ostringstream a, b;
  write_spectrum_csv(a, {-1.0, -1.0, 2.5}, 1e-8);
  EXPECT_EQ(a.str(), "index,energy,multiplicity\n0,-1,2\n1,-1,2\n2,2.5,1\n");
  write_degeneracy_csv(b, degeneracies({-1.0, -1.0, 2.5}, 1e-8));
  EXPECT_EQ(b.str(), "energy,multiplicity\n-1,2\n2.5,1\n");
}

}  // namespace
}  // namespace onsager
