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

#ifndef ONSAGER_DENSE_HPP
#define ONSAGER_DENSE_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "onsager/errors.hpp"
#include "onsager/operator_sum.hpp"

namespace onsager {

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr std::size_t kDefaultDenseCap = std::size_t{1} << 16;

/// Q^N as an integer, or throws when it exceeds the cap.
inline std::size_t checked_dimension(int q, int n, std::size_t cap) {
  std::size_t dim = 1;
  for (int i = 0; i < n; ++i) {
    if (dim > cap / static_cast<std::size_t>(q))
      throw CapExceeded("dimension " + std::to_string(q) + "^" + std::to_string(n) + " exceeds cap " +
                        std::to_string(cap));
    dim *= static_cast<std::size_t>(q);
  }
  return dim;
}

inline ComplexMatrix identity_matrix(Eigen::Index dim) { return ComplexMatrix::Identity(dim, dim); }

/// Clock shift X with X[i][i+1] = 1 (cyclic).
inline ComplexMatrix clock_x_matrix(int q) {
  ComplexMatrix m = ComplexMatrix::Zero(q, q);
  for (int i = 0; i < q; ++i) m(i, (i + 1) % q) = 1.0;
  return m;
}

/// Clock phase Z = diag(omega^k).
inline ComplexMatrix clock_z_matrix(int q) {
  ComplexMatrix m = ComplexMatrix::Zero(q, q);
  for (int i = 0; i < q; ++i) m(i, i) = omega_power(q, i);
  return m;
}

namespace pauli {
inline ComplexMatrix x() { return clock_x_matrix(2); }
inline ComplexMatrix z() { return clock_z_matrix(2); }
inline ComplexMatrix y() {
  ComplexMatrix m(2, 2);
  m << 0.0, Complex(0, -1), Complex(0, 1), 0.0;
  return m;
}
inline ComplexMatrix id() { return identity_matrix(2); }
}  // namespace pauli

/**
 * Dense realization of an operator sum; site 0 is the most significant tensor
 * factor. Each clock string maps |s> to omega^{z.s} |s - x>, so the matrix is
 * filled column by column without forming Kronecker products.
 */
inline ComplexMatrix to_dense(const OperatorSum &a, std::size_t cap = kDefaultDenseCap) {
  const int q = a.q();
  const int n = a.n();
  const std::size_t dim = checked_dimension(q, n, cap);
  ComplexMatrix m = ComplexMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  std::vector<int> digits(static_cast<std::size_t>(n));
  for (const auto &t : a.terms()) {
    std::fill(digits.begin(), digits.end(), 0);
    for (std::size_t col = 0; col < dim; ++col) {
      long long phase = 0;
      std::size_t row = 0;
      for (int j = 0; j < n; ++j) {
        phase += static_cast<long long>(t.z[j]) * digits[j];
        row = row * q + static_cast<std::size_t>((digits[j] - t.x[j] + q) % q);
      }
      m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) += t.coeff * omega_power(q, phase);
      for (int j = n - 1; j >= 0; --j) {
        if (++digits[j] < q) break;
        digits[j] = 0;
      }
    }
  }
  return m;
}

inline ComplexMatrix to_dense(const ClockString &s, std::size_t cap = kDefaultDenseCap) {
  return to_dense(OperatorSum(s, 0.0), cap);
}

inline ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

inline ComplexMatrix kron(const std::vector<ComplexMatrix> &factors) {
  if (factors.empty()) return identity_matrix(1);
  ComplexMatrix out = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) out = kron(out, factors[i]);
  return out;
}

inline ComplexMatrix matmul(const ComplexMatrix &a, const ComplexMatrix &b) {
  if (a.cols() != b.rows()) throw DimensionError("matmul shape mismatch");
  return a * b;
}

inline ComplexMatrix commutator(const ComplexMatrix &a, const ComplexMatrix &b) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols())
    throw DimensionError("commutator needs equal square shapes");
  return a * b - b * a;
}

inline double frobenius_norm(const ComplexMatrix &m) { return m.norm(); }

/// Tensor slot layout: slot 0 is the most significant factor.
struct SlotLayout {
  std::vector<int> dims;

  Eigen::Index total() const {
    Eigen::Index d = 1;
    for (int k : dims) d *= k;
    return d;
  }
  Eigen::Index stride(int slot) const {
    Eigen::Index s = 1;
    for (std::size_t k = static_cast<std::size_t>(slot) + 1; k < dims.size(); ++k) s *= dims[k];
    return s;
  }
  void check(int slot) const {
    if (slot < 0 || slot >= static_cast<int>(dims.size()))
      throw DimensionError("slot " + std::to_string(slot) + " out of range");
  }
};

namespace detail {

/// Offsets of the gate's local basis states within the full index, and the base
/// indices of every complementary configuration.
struct GatePlan {
  std::vector<Eigen::Index> offsets;
  std::vector<Eigen::Index> bases;
};

inline GatePlan plan_gate(const SlotLayout &layout, const std::vector<int> &slots) {
  for (std::size_t i = 0; i < slots.size(); ++i) {
    layout.check(slots[i]);
    for (std::size_t k = 0; k < i; ++k)
      if (slots[k] == slots[i]) throw DimensionError("repeated slot in gate");
  }
  GatePlan plan;
  Eigen::Index local = 1;
  for (int s : slots) local *= layout.dims[s];
  plan.offsets.resize(static_cast<std::size_t>(local));
  for (Eigen::Index g = 0; g < local; ++g) {
    Eigen::Index rem = g, off = 0;
    for (int i = static_cast<int>(slots.size()) - 1; i >= 0; --i) {
      int d = layout.dims[slots[i]];
      off += (rem % d) * layout.stride(slots[i]);
      rem /= d;
    }
    plan.offsets[static_cast<std::size_t>(g)] = off;
  }
  std::vector<bool> in_gate(layout.dims.size(), false);
  for (int s : slots) in_gate[s] = true;
  const Eigen::Index total = layout.total();
  for (Eigen::Index idx = 0; idx < total; ++idx) {
    bool base = true;
    Eigen::Index rem = idx;
    for (int k = static_cast<int>(layout.dims.size()) - 1; k >= 0; --k) {
      if (in_gate[k] && rem % layout.dims[k] != 0) {
        base = false;
        break;
      }
      rem /= layout.dims[k];
    }
    if (base) plan.bases.push_back(idx);
  }
  return plan;
}

}  // namespace detail

/// m * (gate acting on the listed slots, identity elsewhere).
inline ComplexMatrix apply_right(const ComplexMatrix &m, const ComplexMatrix &gate, const std::vector<int> &slots,
                                 const SlotLayout &layout) {
  auto plan = detail::plan_gate(layout, slots);
  const auto g = static_cast<Eigen::Index>(plan.offsets.size());
  if (gate.rows() != g || gate.cols() != g) throw DimensionError("gate size does not match its slots");
  if (m.cols() != layout.total()) throw DimensionError("matrix does not match slot layout");
  ComplexMatrix out = ComplexMatrix::Zero(m.rows(), m.cols());
  for (Eigen::Index base : plan.bases)
    for (Eigen::Index b = 0; b < g; ++b) {
      auto dst = out.col(base + plan.offsets[static_cast<std::size_t>(b)]);
      for (Eigen::Index a = 0; a < g; ++a) {
        Complex c = gate(a, b);
        if (c != Complex(0.0, 0.0)) dst += c * m.col(base + plan.offsets[static_cast<std::size_t>(a)]);
      }
    }
  return out;
}

/// (gate acting on the listed slots) * m.
inline ComplexMatrix apply_left(const ComplexMatrix &gate, const std::vector<int> &slots, const SlotLayout &layout,
                                const ComplexMatrix &m) {
  auto plan = detail::plan_gate(layout, slots);
  const auto g = static_cast<Eigen::Index>(plan.offsets.size());
  if (gate.rows() != g || gate.cols() != g) throw DimensionError("gate size does not match its slots");
  if (m.rows() != layout.total()) throw DimensionError("matrix does not match slot layout");
  ComplexMatrix out = ComplexMatrix::Zero(m.rows(), m.cols());
  for (Eigen::Index base : plan.bases)
    for (Eigen::Index a = 0; a < g; ++a) {
      auto dst = out.row(base + plan.offsets[static_cast<std::size_t>(a)]);
      for (Eigen::Index b = 0; b < g; ++b) {
        Complex c = gate(a, b);
        if (c != Complex(0.0, 0.0)) dst += c * m.row(base + plan.offsets[static_cast<std::size_t>(b)]);
      }
    }
  return out;
}

/// Full matrix of a gate embedded on the listed slots (listed order = gate's tensor order).
inline ComplexMatrix embed(const ComplexMatrix &gate, const std::vector<int> &slots, const SlotLayout &layout) {
  return apply_left(gate, slots, layout, identity_matrix(layout.total()));
}

/// Swap of tensor slots a and b among `slots` slots of dimension `dim`.
inline ComplexMatrix permutation_operator(int dim, int a, int b, int slots) {
  if (dim < 1) throw DimensionError("slot dimension must be positive");
  if (a < 0 || b < 0 || a >= slots || b >= slots) throw DimensionError("slot out of range");
  SlotLayout layout{std::vector<int>(static_cast<std::size_t>(slots), dim)};
  const Eigen::Index total = layout.total();
  ComplexMatrix p = ComplexMatrix::Zero(total, total);
  const Eigen::Index sa = layout.stride(a), sb = layout.stride(b);
  for (Eigen::Index idx = 0; idx < total; ++idx) {
    Eigen::Index da = (idx / sa) % dim, db = (idx / sb) % dim;
    Eigen::Index swapped = idx + (db - da) * sa + (da - db) * sb;
    p(swapped, idx) = 1.0;
  }
  return p;
}

/// Trace over the leading slot of dimension `lead`: T[p][q] = sum_a M[(a,p)][(a,q)].
inline ComplexMatrix partial_trace_leading(const ComplexMatrix &m, Eigen::Index lead) {
  if (m.rows() != m.cols() || m.rows() % lead != 0) throw DimensionError("partial trace shape mismatch");
  const Eigen::Index rest = m.rows() / lead;
  ComplexMatrix t = ComplexMatrix::Zero(rest, rest);
  for (Eigen::Index a = 0; a < lead; ++a) t += m.block(a * rest, a * rest, rest, rest);
  return t;
}

inline double hermiticity_defect(const ComplexMatrix &m) { return (m - m.adjoint()).norm(); }

struct EigenSystem {
  RealVector values;
  ComplexMatrix vectors;
};

/// Ascending eigenpairs of a Hermitian matrix (tridiagonalization + implicit QR).
inline EigenSystem hermitian_eigs(const ComplexMatrix &m, bool vectors = true) {
  if (m.rows() != m.cols()) throw DimensionError("eigensolver needs a square matrix");
  const double scale = std::max(1.0, m.norm());
  if (hermiticity_defect(m) > 1e-10 * scale) throw NumericalError("matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m, vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("Hermitian eigensolver failed");
  EigenSystem out;
  out.values = solver.eigenvalues();
  if (vectors) out.vectors = solver.eigenvectors();
  return out;
}

/// Eigenvalues of a general square matrix, sorted by (real, imag).
inline std::vector<Complex> general_eigenvalues(const ComplexMatrix &m) {
  if (m.rows() != m.cols()) throw DimensionError("eigensolver needs a square matrix");
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(m, false);
  if (solver.info() != Eigen::Success) throw NumericalError("general eigensolver failed");
  std::vector<Complex> vals(solver.eigenvalues().data(), solver.eigenvalues().data() + solver.eigenvalues().size());
  std::sort(vals.begin(), vals.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return vals;
}

inline ComplexMatrix inverse(const ComplexMatrix &m) {
  if (m.rows() != m.cols()) throw DimensionError("inverse needs a square matrix");
  Eigen::PartialPivLU<ComplexMatrix> lu(m);
  double rcond = lu.rcond();
  if (!(rcond > 1e-12)) throw NumericalError("matrix is numerically singular (rcond " + std::to_string(rcond) + ")");
  return lu.inverse();
}

/// Orthonormal basis of the numerical kernel: singular values <= rel_tol * sigma_max.
inline std::vector<ComplexVector> null_space(const ComplexMatrix &m, double rel_tol = 1e-10) {
  Eigen::BDCSVD<ComplexMatrix> svd(m, Eigen::ComputeFullV);
  const RealVector &s = svd.singularValues();
  const double smax = s.size() ? s(0) : 0.0;
  std::vector<ComplexVector> basis;
  for (Eigen::Index k = 0; k < m.cols(); ++k) {
    double sk = k < s.size() ? s(k) : 0.0;
    if (sk <= rel_tol * smax) basis.push_back(svd.matrixV().col(k));
  }
  return basis;
}

inline std::vector<double> singular_values(const ComplexMatrix &m) {
  Eigen::BDCSVD<ComplexMatrix> svd(m);
  const RealVector &s = svd.singularValues();
  return {s.data(), s.data() + s.size()};
}

/// Little-endian binary dump: int64 rows, int64 cols, then row-major (re, im) doubles.
inline void write_binary(std::ostream &os, const ComplexMatrix &m) {
  std::int64_t dims[2] = {m.rows(), m.cols()};
  os.write(reinterpret_cast<const char *>(dims), sizeof(dims));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      double v[2] = {m(i, j).real(), m(i, j).imag()};
      os.write(reinterpret_cast<const char *>(v), sizeof(v));
    }
}

inline ComplexMatrix read_binary(std::istream &is) {
  std::int64_t dims[2] = {0, 0};
  is.read(reinterpret_cast<char *>(dims), sizeof(dims));
  if (!is || dims[0] <= 0 || dims[1] <= 0) throw DimensionError("bad matrix header");
  ComplexMatrix m(dims[0], dims[1]);
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      double v[2];
      is.read(reinterpret_cast<char *>(v), sizeof(v));
      m(i, j) = Complex(v[0], v[1]);
    }
  if (!is) throw DimensionError("truncated matrix data");
  return m;
}

/// CSV dump, one "row,col,re,im" line per nonzero entry.
inline void write_csv(std::ostream &os, const ComplexMatrix &m) {
  os << "row,col,re,im\n" << std::setprecision(17);
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (m(i, j) != Complex(0.0, 0.0)) os << i << ',' << j << ',' << m(i, j).real() << ',' << m(i, j).imag() << '\n';
}

}  // namespace onsager

#endif  // ONSAGER_DENSE_HPP
