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

#include <random>
#include <sstream>

#include "onsager/dense.hpp"
#include "onsager/model.hpp"

namespace onsager {
namespace {

ComplexMatrix random_matrix(std::mt19937 &rng, int rows, int cols) {
  std::normal_distribution<double> g;
  ComplexMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = Complex(g(rng), g(rng));
  return m;
}

/// Reference kron built from explicit index arithmetic.
ComplexMatrix naive_kron(const ComplexMatrix &a, const ComplexMatrix &b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      for (Eigen::Index k = 0; k < b.rows(); ++k)
        for (Eigen::Index l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

TEST(Dense, SingleSiteZ) {
  ComplexMatrix z = to_dense(ClockString::pauli(1, {{0, 'Z'}}));
  ComplexMatrix expected(2, 2);
  expected << 1.0, 0.0, 0.0, -1.0;
  EXPECT_EQ((z - expected).norm(), 0.0);
}

TEST(Dense, ClockShiftIsCyclic) {
  ComplexMatrix x = to_dense(ClockString::clock_x(3, 1, 0));
  ComplexMatrix expected = ComplexMatrix::Zero(3, 3);
  expected(0, 1) = expected(1, 2) = expected(2, 0) = 1.0;
  EXPECT_EQ((x - expected).norm(), 0.0);
  EXPECT_EQ((to_dense(ClockString::clock_z(3, 1, 0)) - clock_z_matrix(3)).norm(), 0.0);
}

TEST(Dense, SiteZeroIsMostSignificant) {
  ComplexMatrix zx = to_dense(ClockString::pauli(2, {{0, 'Z'}, {1, 'X'}}));
  EXPECT_LE((zx - naive_kron(pauli::z(), pauli::x())).norm(), 0.0);
  ComplexMatrix y3 = to_dense(ClockString::pauli(3, {{0, 'Y'}, {2, 'X'}}));
  EXPECT_LE((y3 - naive_kron(naive_kron(pauli::y(), pauli::id()), pauli::x())).norm(), 1e-15);
}

TEST(Dense, RealizationIsAHomomorphismForAllSmallSystems) {
  std::mt19937 rng(11);
  for (int q : {2, 3})
    for (int n = 1; n <= 4; ++n) {
      std::uniform_int_distribution<int> e(0, q - 1);
      for (int t = 0; t < 5; ++t) {
        ClockString a(q, n, Complex(0.3, -0.7)), b(q, n, Complex(-1.1, 0.2));
        for (int k = 0; k < n; ++k) {
          a.set_x(k, e(rng));
          a.set_z(k, e(rng));
          b.set_x(k, e(rng));
          b.set_z(k, e(rng));
        }
        ComplexMatrix da = to_dense(a), db = to_dense(b);
        EXPECT_LE((to_dense(multiply(a, b)) - da * db).norm(), 1e-12);
        EXPECT_LE((to_dense(adjoint(a)) - da.adjoint()).norm(), 1e-12);
        OperatorSum s(q, n, {a, b});
        EXPECT_LE((to_dense(s) - (da + db)).norm(), 1e-12);
      }
    }
}

TEST(Dense, KronExamples) {
  EXPECT_EQ((kron(pauli::id(), pauli::id()) - identity_matrix(4)).norm(), 0.0);
  ComplexMatrix xx = kron(pauli::x(), pauli::x());
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) EXPECT_EQ(xx(i, j), Complex(i + j == 3 ? 1.0 : 0.0, 0.0));
}

TEST(Dense, KronMixedProductProperty) {
  std::mt19937 rng(12);
  for (int t = 0; t < 10; ++t) {
    ComplexMatrix a = random_matrix(rng, 2, 2), b = random_matrix(rng, 2, 2), c = random_matrix(rng, 2, 2),
                  d = random_matrix(rng, 2, 2);
    EXPECT_LE((matmul(kron(a, b), kron(c, d)) - kron(a * c, b * d)).norm(), 1e-12);
    EXPECT_LE((kron(a, b) - naive_kron(a, b)).norm(), 0.0);
  }
  EXPECT_THROW(matmul(ComplexMatrix::Zero(2, 3), ComplexMatrix::Zero(2, 3)), DimensionError);
}

TEST(Dense, PermutationOperator) {
  ComplexMatrix p = permutation_operator(2, 0, 1, 2);
  EXPECT_LE((p * p - identity_matrix(4)).norm(), 0.0);
  EXPECT_LE((p * kron(pauli::z(), pauli::id()) * p - kron(pauli::id(), pauli::z())).norm(), 0.0);
  EXPECT_EQ(p.trace(), Complex(2.0, 0.0));
  ComplexMatrix p3 = permutation_operator(3, 0, 2, 3);
  EXPECT_EQ(p3.trace(), Complex(9.0, 0.0));
  std::mt19937 rng(13);
  ComplexMatrix a = random_matrix(rng, 3, 3);
  EXPECT_LE((p3 * kron({a, identity_matrix(3), identity_matrix(3)}) * p3 -
             kron({identity_matrix(3), identity_matrix(3), a}))
                .norm(),
            1e-12);
}

TEST(Dense, GateApplicationMatchesEmbeddedProducts) {
  std::mt19937 rng(14);
  SlotLayout layout{{4, 2, 2, 2}};
  ComplexMatrix gate = random_matrix(rng, 8, 8);
  ComplexMatrix m = random_matrix(rng, 32, 32);
  for (std::vector<int> slots : {std::vector<int>{0, 2}, std::vector<int>{0, 3}, std::vector<int>{3, 0}}) {
    const ComplexMatrix &g = gate;
    ComplexMatrix full = embed(g, slots, layout);
    EXPECT_LE((apply_right(m, g, slots, layout) - m * full).norm(), 1e-10);
    EXPECT_LE((apply_left(g, slots, layout, m) - full * m).norm(), 1e-10);
  }
  // Embedding on adjacent leading slots is a plain Kronecker product.
  EXPECT_LE((embed(gate, {0, 1}, layout) - kron({gate, identity_matrix(2), identity_matrix(2)})).norm(), 1e-12);
}

TEST(Dense, PartialTraceOfKronProduct) {
  std::mt19937 rng(15);
  ComplexMatrix a = random_matrix(rng, 3, 3), b = random_matrix(rng, 4, 4);
  EXPECT_LE((partial_trace_leading(kron(a, b), 3) - a.trace() * b).norm(), 1e-12);
  EXPECT_THROW(partial_trace_leading(ComplexMatrix::Zero(5, 5), 2), DimensionError);
}

TEST(Dense, HermitianEigenvalueExamples) {
  ComplexMatrix d = ComplexMatrix::Zero(3, 3);
  d(0, 0) = 3.0;
  d(1, 1) = 1.0;
  d(2, 2) = 2.0;
  RealVector v = hermitian_eigs(d).values;
  EXPECT_NEAR(v(0), 1.0, 1e-14);
  EXPECT_NEAR(v(1), 2.0, 1e-14);
  EXPECT_NEAR(v(2), 3.0, 1e-14);
  RealVector x = hermitian_eigs(pauli::x()).values;
  EXPECT_NEAR(x(0), -1.0, 1e-14);
  EXPECT_NEAR(x(1), 1.0, 1e-14);
  ModelSpec m;
  m.kind = ModelKind::kTfim;
  m.L = 2;
  m.r = 1;
  m.lambda = 0.0;
  RealVector t = hermitian_eigs(to_dense(hamiltonian(m))).values;
  std::vector<double> expected{-2, -2, 2, 2};
  for (int k = 0; k < 4; ++k) EXPECT_NEAR(t(k), expected[k], 1e-12);
}

TEST(Dense, HermitianEigenpairsAreAccurate) {
  std::mt19937 rng(16);
  ComplexMatrix a = random_matrix(rng, 20, 20);
  ComplexMatrix h = a + a.adjoint();
  EigenSystem es = hermitian_eigs(h);
  for (Eigen::Index k = 0; k < 20; ++k)
    EXPECT_LE((h * es.vectors.col(k) - es.values(k) * es.vectors.col(k)).norm(), 1e-8 * h.norm());
  EXPECT_NEAR(es.values.sum(), h.trace().real(), 1e-8 * 20);
  for (Eigen::Index k = 1; k < 20; ++k) EXPECT_LE(es.values(k - 1), es.values(k));
  EXPECT_THROW(hermitian_eigs(a), NumericalError);
}

TEST(Dense, GeneralEigenvaluesSorted) {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 1) = 1.0;
  m(1, 0) = -1.0;
  auto v = general_eigenvalues(m);
  ASSERT_EQ(v.size(), 2u);
  EXPECT_NEAR(std::abs(v[0] - Complex(0.0, -1.0)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(v[1] - Complex(0.0, 1.0)), 0.0, 1e-14);
}

TEST(Dense, InverseAndSingularity) {
  EXPECT_LE((inverse(identity_matrix(4)) - identity_matrix(4)).norm(), 0.0);
  std::mt19937 rng(17);
  ComplexMatrix a = random_matrix(rng, 6, 6);
  EXPECT_LE((a * inverse(a) - identity_matrix(6)).norm(), 1e-8);
  EXPECT_THROW(inverse(ComplexMatrix::Zero(3, 3)), NumericalError);
}

TEST(Dense, NullSpaceExamples) {
  ComplexMatrix row(1, 2);
  row << 1.0, -1.0;
  auto basis = null_space(row);
  ASSERT_EQ(basis.size(), 1u);
  ComplexVector v = basis[0] / basis[0](0);
  EXPECT_NEAR(std::abs(v(1) - 1.0), 0.0, 1e-14);
  EXPECT_NEAR(basis[0].norm(), 1.0, 1e-14);
  EXPECT_TRUE(null_space(identity_matrix(3)).empty());
  std::mt19937 rng(18);
  ComplexMatrix tall = random_matrix(rng, 5, 3) * random_matrix(rng, 3, 6);
  auto k = null_space(tall);
  EXPECT_EQ(k.size(), 3u);
  for (const auto &b : k) EXPECT_LE((tall * b).norm(), 1e-10 * tall.norm());
}

TEST(Dense, CapIsEnforced) {
  EXPECT_EQ(checked_dimension(2, 10, 1024), 1024u);
  EXPECT_THROW(checked_dimension(2, 11, 1024), CapExceeded);
  ModelSpec m;
  m.kind = ModelKind::kFendley;
  m.L = 8;
  m.r = 2;
  EXPECT_THROW(to_dense(hamiltonian(m), 128), CapExceeded);
}

TEST(Dense, BinaryAndCsvSerialization) {
  std::mt19937 rng(19);
  ComplexMatrix a = random_matrix(rng, 3, 4);
  std::stringstream ss;
  write_binary(ss, a);
  ComplexMatrix b = read_binary(ss);
  EXPECT_EQ((a - b).norm(), 0.0);
  std::stringstream bad("xx");
  EXPECT_THROW(read_binary(bad), DimensionError);
  std::ostringstream csv;
  write_csv(csv, pauli::y());
  EXPECT_EQ(csv.str(), "row,col,re,im\n0,1,0,-1\n1,0,0,1\n");
}

}  // namespace
}  // namespace onsager
