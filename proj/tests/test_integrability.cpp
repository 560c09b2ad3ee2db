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

#include <numbers>
#include <random>

#include "onsager/integrability.hpp"

namespace onsager {
namespace {

const Complex kI(0.0, 1.0);

/// Eight-vertex table with t = tanh u.
ComplexMatrix reference_8v_table(Complex u) {
  const Complex t = std::tanh(u);
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m(0, 0) = 1.0;
  m(0, 3) = -t;
  m(1, 1) = -t;
  m(1, 2) = 1.0;
  m(2, 1) = 1.0;
  m(2, 2) = t;
  m(3, 0) = t;
  m(3, 3) = 1.0;
  return m;
}

/// 8x8 Fendley Lax table with t = tanh u, as (row, col, +-1 for 1 / +-2 for +-t).
ComplexMatrix reference_fendley_table(Complex u) {
  const Complex t = std::tanh(u);
  const int entries[][3] = {{0, 0, 1}, {0, 7, -2}, {1, 2, 1}, {1, 5, -2}, {2, 3, -2}, {2, 4, 1}, {3, 1, -2}, {3, 6, 1},
                            {4, 1, 1}, {4, 6, 2},  {5, 3, 1}, {5, 4, 2},  {6, 2, 2},  {6, 5, 1}, {7, 0, 2},  {7, 7, 1}};
  ComplexMatrix m = ComplexMatrix::Zero(8, 8);
  for (const auto &e : entries) m(e[0], e[1]) = e[2] == 1 ? Complex(1.0) : (e[2] == 2 ? t : -t);
  return m;
}

TEST(Lax, EightVertexMatchesReferenceTable) {
  for (Complex u : {Complex(0.3, 0.0), Complex(-0.7, 0.2), Complex(0.1, -0.4)})
    EXPECT_LE((lax_8v(u) - reference_8v_table(u)).norm(), 1e-14);
}

TEST(Lax, FendleyMatchesReferenceTable) {
  for (Complex u : {Complex(0.3, 0.0), Complex(-0.7, 0.2), Complex(0.1, -0.4)})
    EXPECT_LE((lax_fendley(u) - reference_fendley_table(u)).norm(), 1e-14);
}

TEST(Lax, RegularPointIsPermutation) {
  EXPECT_LE((lax_8v(0.0) - permutation_operator(2, 0, 1, 2)).norm(), 1e-15);
  EXPECT_LE((lax_8v_full(1.0, 0.6) - permutation_operator(2, 0, 1, 2)).norm(), 1e-15);
  ComplexMatrix p = permutation_operator(2, 1, 2, 3) * permutation_operator(2, 0, 2, 3);
  EXPECT_LE((lax_fendley(0.0) - p).norm(), 1e-15);
  EXPECT_LE((lax_fendley_full(1.0, 1.1) - p).norm(), 1e-15);
}

TEST(Lax, FullFamilyReducesToTrigonometricAtThetaZero) {
  // z = e^s: 1 + alpha h + beta h^2 = cosh^2(s/2) (1 + sqrt2 tanh(s/2) h) since h^2 = 1.
  for (Complex s : {Complex(0.4, 0.1), Complex(-0.3, 0.2)}) {
    const Complex z = std::exp(s);
    const Complex u = std::atanh(kI * std::numbers::sqrt2 * std::tanh(s / 2.0));
    const Complex c2 = std::cosh(s / 2.0) * std::cosh(s / 2.0);
    EXPECT_LE((lax_fendley_full(z, 0.0) - c2 * lax_fendley(u)).norm(), 1e-12);
    EXPECT_LE((lax_8v_full(z, 0.0) - c2 * lax_8v(u)).norm(), 1e-12);
  }
}

TEST(Lax, AnalyticDerivativesMatchFiniteDifferences) {
  for (const LaxOperator &lax : {lax_8v_operator(), lax_fendley_operator(), lax_8v_full_operator(0.4),
                                 lax_fendley_full_operator(0.9)}) {
    const Complex p = lax.parameter == "z" ? Complex(1.2, 0.1) : Complex(0.2, 0.1);
    const double h = 1e-5;
    ComplexMatrix fd1 = (lax.evaluate(p + h) - lax.evaluate(p - h)) / (2.0 * h);
    ComplexMatrix fd2 = (lax.evaluate(p + h) - 2.0 * lax.evaluate(p) + lax.evaluate(p - h)) / (h * h);
    EXPECT_LE((lax.derivative(p, 1) - fd1).norm(), 1e-8) << lax.name;
    EXPECT_LE((lax.derivative(p, 2) - fd2).norm(), 1e-4) << lax.name;
  }
}

TEST(Lax, PoleAndZeroParametersThrow) {
  EXPECT_THROW(lax_8v(Complex(0.0, std::numbers::pi / 2.0)), NumericalError);
  EXPECT_THROW(lax_8v_full(0.0, 0.3), NumericalError);
}

TEST(FreeFermion, TrigonometricWeights) {
  for (Complex u : {Complex(0.3, 0.0), Complex(-0.7, 0.2)}) {
    EightVertexWeights w = weights_8v(u);
    EXPECT_LE(std::abs(w.free_fermion_defect()), 1e-14);
    w.b1 *= 2.0;
    EXPECT_GT(std::abs(w.free_fermion_defect()), 1e-3);
  }
  EXPECT_TRUE(check_free_fermion(FreeFermionSource::kTrigonometric, 50, 3).passed);
  EXPECT_TRUE(check_free_fermion(FreeFermionSource::kFullTheta, 50, 3).passed);
}

TEST(FreeFermion, ClosedFormWeightsMatchTheMatrix) {
  for (double theta : {0.0, 0.3, 1.2, 2.5})
    for (Complex z : {Complex(1.7, 0.0), Complex(0.6, 0.4)}) {
      EXPECT_LE((weights_8v_full(z, theta).matrix() - lax_8v_full(z, theta)).norm(), 1e-13);
      EXPECT_LE(std::abs(weights_8v_full(z, theta).free_fermion_defect()), 1e-13);
    }
}

TEST(FreeFermion, EqualCAndEqualDWeightsViolateTheCondition) {
  const double theta = 0.3;
  const Complex z(1.7, 0.0);
  EightVertexWeights w = weights_8v_full(z, theta);
  EightVertexWeights naive = w;
  naive.c1 = naive.c2 = w.a1;
  naive.d2 = naive.d1;
  EXPECT_GT(std::abs(naive.free_fermion_defect()), 1e-2);
  EXPECT_GT((naive.matrix() - lax_8v_full(z, theta)).norm(), 1e-2);
}

TEST(RMatrix, EightVertexDifferenceForm) {
  EXPECT_TRUE(check_ybe(r_8v_spec(), lax_8v_operator(), 10, 5).passed);
  EXPECT_TRUE(check_ybe(r_8v_spec(), 10, 5, false).passed);
}

TEST(RMatrix, EightVertexFull) {
  for (const auto &rep : check_ybe_8v_full(10, 9)) EXPECT_TRUE(rep.passed) << rep.name << " " << rep.residual;
  const Complex q = std::exp(Complex(0.0, 0.8)), z(1.3, 0.2);
  ComplexMatrix r = r_8v_full(z, z, q);
  EXPECT_LE(std::abs(r(0, 0) - r(1, 2)), 1e-12 * std::abs(r(0, 0)));
  // Not of difference form away from theta = n pi / 2.
  ComplexMatrix a = r_8v_full(Complex(1.3), Complex(0.8), q), b = r_8v_full(Complex(2.6), Complex(1.6), q);
  EXPECT_GT((a / a(0, 0) - b / b(0, 0)).norm(), 1e-3);
}

TEST(RMatrix, FendleyIntertwinesAndSatisfiesYbe) {
  EXPECT_TRUE(check_ybe(r_fendley_spec(), lax_fendley_operator(), 6, 13).passed);
  EXPECT_TRUE(check_ybe(r_fendley_spec(), 6, 13, false).passed);
}

TEST(RMatrix, FendleyReflectedSignFailsRll) {
  const Complex u(0.3, 0.1), v(-0.2, 0.05);
  double good = ybe_rll_residual(r_fendley(u, v), lax_fendley(u), lax_fendley(v), 4, 2);
  double reflected = ybe_rll_residual(r_fendley_reflected(u, v), lax_fendley(u), lax_fendley(v), 4, 2);
  EXPECT_LE(good, 1e-12);
  EXPECT_GT(reflected, 1e-3);
  EXPECT_LE(ybe_rll_residual(r_fendley_reflected(u, v), lax_fendley(-u), lax_fendley(-v), 4, 2), 1e-12);
}

TEST(RMatrix, FendleyPerturbationIsDetected) {
  std::mt19937 rng(4);
  std::normal_distribution<double> n(0.0, 1.0);
  ComplexMatrix noise(16, 16);
  for (Eigen::Index i = 0; i < 16; ++i)
    for (Eigen::Index j = 0; j < 16; ++j) noise(i, j) = Complex(n(rng), n(rng));
  const Complex u(0.3, 0.1), v(-0.2, 0.05);
  ComplexMatrix r = r_fendley(u, v) + 1e-3 * noise / noise.norm() * r_fendley(u, v).norm();
  EXPECT_GT(ybe_rll_residual(r, lax_fendley(u), lax_fendley(v), 4, 2), 1e-5);
}

TEST(RMatrix, FendleyInversionAndNonDifferenceForm) {
  for (auto [u, v] : std::vector<std::pair<Complex, Complex>>{{0.3, -0.2}, {Complex(0.5, 0.1), Complex(0.1, -0.3)}}) {
    ComplexMatrix prod = r_fendley(u, v) * swap_factors(r_fendley(v, u), 4);
    EXPECT_LE((prod - fendley_inversion_scalar(u, v) * identity_matrix(16)).norm(), 1e-12);
  }
  EXPECT_GT((r_fendley(0.5, 0.2) - r_fendley(0.4, 0.1)).norm(), 1e-3);
  EXPECT_FALSE(r_fendley_spec().difference_form);
  EXPECT_TRUE(r_8v_spec().difference_form);
}

/// Cyclic shift |s1 s2 ... sL> -> |s2 ... sL s1> and its inverse.
std::pair<ComplexMatrix, ComplexMatrix> shifts(int L) {
  const Eigen::Index dim = Eigen::Index{1} << L;
  ComplexMatrix s = ComplexMatrix::Zero(dim, dim);
  for (Eigen::Index idx = 0; idx < dim; ++idx) {
    Eigen::Index top = (idx >> (L - 1)) & 1;
    Eigen::Index rotated = ((idx << 1) & (dim - 1)) | top;
    s(rotated, idx) = 1.0;
  }
  return {s, s.transpose()};
}

TEST(Transfer, RegularPointIsTranslation) {
  auto [s, sinv] = shifts(5);
  ComplexMatrix t = transfer(lax_8v_operator(), 5, 0.0);
  EXPECT_LE(std::min((t - s).norm(), (t - sinv).norm()), 1e-13);
  ComplexMatrix tf = transfer(lax_fendley_operator(), 5, 0.0);
  EXPECT_LE(std::min((tf - s * s).norm(), (tf - sinv * sinv).norm()), 1e-13);
}

TEST(Transfer, CommutingFamilies) {
  EXPECT_TRUE(check_transfer_commutation(lax_8v_operator(), 6, 4, 1).passed);
  EXPECT_TRUE(check_transfer_commutation(lax_8v_full_operator(0.5), 6, 4, 1).passed);
  EXPECT_TRUE(check_transfer_commutation(lax_fendley_operator(), 6, 4, 1).passed);
  VerificationReport mixed = check_transfer_commutation(lax_fendley_full_operator(0.7), 6, 4, 2, 1e-8);
  EXPECT_TRUE(mixed.passed) << mixed.residual;
}

TEST(Transfer, CommutesWithHamiltonian) {
  ModelSpec m;
  m.kind = ModelKind::kFendleyMixed;
  m.L = 6;
  m.theta = 0.7;
  EXPECT_TRUE(check_transfer_hamiltonian(lax_fendley_full_operator(0.7), 6, to_dense(hamiltonian(m)), 3, 8).passed);
}

TEST(Charges, FendleyHamiltonianAndThirdCharge) {
  ModelSpec m;
  m.kind = ModelKind::kFendley;
  m.L = 6;
  m.r = 2;
  auto reports = check_charges(m);
  ASSERT_EQ(reports.size(), 3u);
  for (const auto &r : reports) EXPECT_TRUE(r.passed) << r.name << " " << r.residual;
  ComplexMatrix q2 = charge(lax_fendley_operator(), 6, 1);
  EXPECT_LE((q2 - to_dense(hamiltonian(m))).norm(), 1e-10);
}

TEST(Charges, QuarterPrefactorFailsTheThirdCharge) {
  ModelSpec m;
  m.L = 6;
  ComplexMatrix q3 = charge(lax_fendley_operator(), 6, 2);
  OperatorSum sum(2, 6);
  for (int s = 0; s <= 2; ++s)
    for (int t = s + 1; t <= 2; ++t) sum = add(sum, commuting_charge(m, s, t, ChargePrefactor::kQuarter));
  ComplexMatrix quarter = to_dense(add(scale(sum, -4.0), OperatorSum::identity(2, 6, kI * 6.0)));
  EXPECT_GT(relative_difference(q3, quarter), 1e-2);
}

TEST(Charges, OtherModels) {
  ModelSpec e;
  e.kind = ModelKind::kFf8v;
  e.L = 6;
  e.r = 1;
  for (double theta : {0.0, 0.4}) {
    e.theta = theta;
    for (const auto &r : check_charges(e)) EXPECT_TRUE(r.passed) << theta << " " << r.name << " " << r.residual;
  }
  ModelSpec f;
  f.kind = ModelKind::kFendleyMixed;
  f.L = 5;
  f.theta = 0.7;
  for (const auto &r : check_charges(f)) EXPECT_TRUE(r.passed) << r.name << " " << r.residual;
  ModelSpec t;
  t.kind = ModelKind::kTfim;
  t.r = 1;
  EXPECT_THROW(check_charges(t), ConfigError);
}

TEST(Charges, DerivativeAgreesWithFiniteDifference) {
  EXPECT_TRUE(check_derivative_fd(lax_fendley_operator(), 5, 3, 2).passed);
  EXPECT_TRUE(check_derivative_fd(lax_8v_full_operator(0.3), 5, 3, 2).passed);
}

TEST(Sampler, Deterministic) {
  ParameterSampler a(42), b(42), c(43);
  for (int k = 0; k < 10; ++k) {
    Complex x = a.additive();
    EXPECT_EQ(x, b.additive());
    EXPECT_LE(std::abs(x.real()), 1.0);
    EXPECT_LE(std::abs(x.imag()), 0.5);
  }
  EXPECT_NE(a.additive(), c.additive());
}

}  // namespace
}  // namespace onsager
