// Copyright 2026 The pptlab Authors
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

#include "pptlab/linalg.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>

#include <Eigen/Eigenvalues>

namespace pptlab {

namespace {

Eigen::Index product(std::span<const int> dims, std::size_t begin, std::size_t end) {
  Eigen::Index p = 1;
  for (std::size_t i = begin; i < end; ++i) p *= dims[i];
  return p;
}

void check_permutation(std::span<const int> perm, std::size_t n) {
  if (perm.size() != n) {
    throw InvalidPermutation("permutation has " + std::to_string(perm.size()) +
                             " entries, expected " + std::to_string(n));
  }
  std::vector<bool> seen(n, false);
  for (int p : perm) {
    if (p < 0 || static_cast<std::size_t>(p) >= n || seen[p]) {
      throw InvalidPermutation("not a permutation of factor indices");
    }
    seen[p] = true;
  }
}

}  // namespace

BipartiteOperator::BipartiteOperator(ComplexMatrix m, std::vector<int> dims, int cut_)
    : matrix(std::move(m)), factor_dims(std::move(dims)), cut(cut_) {
  if (matrix.rows() != matrix.cols()) throw ContractViolation("operator must be square");
  if (factor_dims.empty()) throw ContractViolation("factor_dims must be non-empty");
  for (int d : factor_dims) {
    if (d <= 0) throw ContractViolation("factor dimensions must be positive");
  }
  if (product(factor_dims, 0, factor_dims.size()) != matrix.rows()) {
    throw ContractViolation("product of factor_dims must equal the matrix dimension");
  }
  if (factor_dims.size() > 1 && (cut < 1 || cut >= static_cast<int>(factor_dims.size()))) {
    throw ContractViolation("cut must satisfy 1 <= cut < number of factors");
  }
}

Eigen::Index BipartiteOperator::dim_a() const { return product(factor_dims, 0, cut); }

Eigen::Index BipartiteOperator::dim_b() const {
  return product(factor_dims, cut, factor_dims.size());
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, Eigen::Index dim_a, Eigen::Index dim_b) {
  ComplexMatrix out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < dim_a; ++i)
    for (Eigen::Index k = 0; k < dim_a; ++k)
      out.block(k * dim_b, i * dim_b, dim_b, dim_b) = m.block(i * dim_b, k * dim_b, dim_b, dim_b);
  return out;
}

BipartiteOperator partial_transpose(const BipartiteOperator& m) {
  return {partial_transpose(m.matrix, m.dim_a(), m.dim_b()), m.factor_dims, m.cut};
}

ComplexMatrix partial_trace(const BipartiteOperator& m, bool keep_a) {
  const Eigen::Index da = m.dim_a(), db = m.dim_b();
  if (keep_a) {
    ComplexMatrix out = ComplexMatrix::Zero(da, da);
    for (Eigen::Index i = 0; i < da; ++i)
      for (Eigen::Index k = 0; k < da; ++k)
        out(i, k) = m.matrix.block(i * db, k * db, db, db).trace();
    return out;
  }
  ComplexMatrix out = ComplexMatrix::Zero(db, db);
  for (Eigen::Index i = 0; i < da; ++i) out += m.matrix.block(i * db, i * db, db, db);
  return out;
}

std::vector<Eigen::Index> subsystem_index_map(std::span<const int> factor_dims,
                                              std::span<const int> perm) {
  const std::size_t n = factor_dims.size();
  check_permutation(perm, n);
  if (n == 0) return {0};
  const Eigen::Index total = product(factor_dims, 0, n);

  // Row-major strides of the original layout.
  std::vector<Eigen::Index> old_stride(n, 1);
  for (std::size_t t = n - 1; t-- > 0;) old_stride[t] = old_stride[t + 1] * factor_dims[t + 1];

  std::vector<int> new_dims(n);
  for (std::size_t t = 0; t < n; ++t) new_dims[t] = factor_dims[perm[t]];

  std::vector<Eigen::Index> map(total);
  std::vector<int> digit(n, 0);
  for (Eigen::Index idx = 0; idx < total; ++idx) {
    Eigen::Index old = 0;
    for (std::size_t t = 0; t < n; ++t) old += digit[t] * old_stride[perm[t]];
    map[idx] = old;
    for (std::size_t t = n; t-- > 0;) {
      if (++digit[t] < new_dims[t]) break;
      digit[t] = 0;
    }
  }
  return map;
}

BipartiteOperator permute_subsystems(const BipartiteOperator& m, std::span<const int> perm) {
  return permute_subsystems(m, perm, m.cut);
}

BipartiteOperator permute_subsystems(const BipartiteOperator& m, std::span<const int> perm,
                                     int new_cut) {
  const auto map = subsystem_index_map(m.factor_dims, perm);
  const auto n = static_cast<Eigen::Index>(map.size());
  ComplexMatrix out(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) out(i, j) = m.matrix(map[i], map[j]);
  std::vector<int> dims(perm.size());
  for (std::size_t t = 0; t < perm.size(); ++t) dims[t] = m.factor_dims[perm[t]];
  return {std::move(out), std::move(dims), new_cut};
}

ComplexVector permute_subsystems(const ComplexVector& v, std::span<const int> factor_dims,
                                 std::span<const int> perm) {
  const auto map = subsystem_index_map(factor_dims, perm);
  if (static_cast<Eigen::Index>(map.size()) != v.size()) {
    throw ContractViolation("vector length does not match factor_dims");
  }
  ComplexVector out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = v(map[i]);
  return out;
}

ComplexMatrix embed(const ComplexMatrix& op, std::span<const int> targets,
                    std::span<const int> factor_dims) {
  const std::size_t n = factor_dims.size();
  std::vector<bool> is_target(n, false);
  Eigen::Index dim_t = 1;
  for (int t : targets) {
    if (t < 0 || static_cast<std::size_t>(t) >= n || is_target[t]) {
      throw InvalidPermutation("invalid target factor list");
    }
    is_target[t] = true;
    dim_t *= factor_dims[t];
  }
  if (op.rows() != dim_t || op.cols() != dim_t) {
    throw ContractViolation("operator dimension does not match target factors");
  }
  // Layout (targets..., rest...) then undo the permutation.
  std::vector<int> order(targets.begin(), targets.end());
  for (std::size_t t = 0; t < n; ++t)
    if (!is_target[t]) order.push_back(static_cast<int>(t));
  const Eigen::Index total = product(factor_dims, 0, n);
  const ComplexMatrix lifted = kron(op, ComplexMatrix::Identity(total / dim_t, total / dim_t));

  std::vector<int> dims_in_order(n);
  for (std::size_t t = 0; t < n; ++t) dims_in_order[t] = factor_dims[order[t]];
  std::vector<int> inverse(n);
  for (std::size_t t = 0; t < n; ++t) inverse[order[t]] = static_cast<int>(t);

  const auto map = subsystem_index_map(dims_in_order, inverse);
  ComplexMatrix out(total, total);
  for (Eigen::Index i = 0; i < total; ++i)
    for (Eigen::Index j = 0; j < total; ++j) out(i, j) = lifted(map[i], map[j]);
  return out;
}

double hermitian_defect(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) return std::numeric_limits<double>::infinity();
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

bool is_hermitian(const ComplexMatrix& m, double tol) { return hermitian_defect(m) <= tol; }

Spectrum eig_hermitian(const ComplexMatrix& m) {
  if (!is_hermitian(m)) {
    throw ContractViolation("eig_hermitian: input is not Hermitian (defect " +
                            std::to_string(hermitian_defect(m)) + ")");
  }
  const ComplexMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  Spectrum s;
  s.eigenvalues = es.eigenvalues().reverse();
  s.eigenvectors = es.eigenvectors().rowwise().reverse();
  return s;
}

double min_eigenvalue(const ComplexMatrix& m) {
  return eig_hermitian(m).eigenvalues.minCoeff();
}

double max_eigenvalue(const ComplexMatrix& m) {
  return eig_hermitian(m).eigenvalues.maxCoeff();
}

bool is_psd(const ComplexMatrix& m, double tol) {
  if (m.size() == 0) return true;
  return min_eigenvalue(m) >= -tol;
}

ComplexMatrix projector(const ComplexVector& v) { return v * v.adjoint(); }

}  // namespace pptlab
