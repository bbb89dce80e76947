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

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

namespace pptlab {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Numerical tolerances shared by every module.
struct Tolerances {
  double hermitian = 1e-12;
  double psd = 1e-9;
  double normalization = 1e-12;
  double reconstruction = 1e-10;
};

inline constexpr Tolerances kTolerances{};

class ContractViolation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InvalidPermutation : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Operator on a tensor product of factors; factors [0, cut) belong to party A.
struct BipartiteOperator {
  ComplexMatrix matrix;
  std::vector<int> factor_dims;
  int cut = 1;

  BipartiteOperator() = default;
  BipartiteOperator(ComplexMatrix m, std::vector<int> dims, int cut);

  Eigen::Index dim() const { return matrix.rows(); }
  Eigen::Index dim_a() const;
  Eigen::Index dim_b() const;
};

template <typename DerivedA, typename DerivedB>
Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic> kron(
    const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  return Eigen::kroneckerProduct(a.derived(), b.derived()).eval();
}

/// Transposes the composite A index: (|ij><kl|)^Gamma = |kj><il|.
ComplexMatrix partial_transpose(const ComplexMatrix& m, Eigen::Index dim_a, Eigen::Index dim_b);
BipartiteOperator partial_transpose(const BipartiteOperator& m);

/// Partial trace over party B (keep_a) or party A.
ComplexMatrix partial_trace(const BipartiteOperator& m, bool keep_a);

/// For each index of the permuted space, the index in the original space.
/// New factor t is old factor perm[t].
std::vector<Eigen::Index> subsystem_index_map(std::span<const int> factor_dims,
                                              std::span<const int> perm);

BipartiteOperator permute_subsystems(const BipartiteOperator& m, std::span<const int> perm);
BipartiteOperator permute_subsystems(const BipartiteOperator& m, std::span<const int> perm,
                                     int new_cut);
ComplexVector permute_subsystems(const ComplexVector& v, std::span<const int> factor_dims,
                                 std::span<const int> perm);

/// Lifts `op` acting on the listed factors (in that order) to the full space.
ComplexMatrix embed(const ComplexMatrix& op, std::span<const int> targets,
                    std::span<const int> factor_dims);

struct Spectrum {
  Eigen::VectorXd eigenvalues;  // descending
  ComplexMatrix eigenvectors;   // columns
};

double hermitian_defect(const ComplexMatrix& m);
bool is_hermitian(const ComplexMatrix& m, double tol = kTolerances.hermitian);

Spectrum eig_hermitian(const ComplexMatrix& m);
double min_eigenvalue(const ComplexMatrix& m);
double max_eigenvalue(const ComplexMatrix& m);
bool is_psd(const ComplexMatrix& m, double tol = kTolerances.psd);

/// Largest absolute entrywise difference.
template <typename DerivedA, typename DerivedB>
double max_abs_diff(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

ComplexMatrix projector(const ComplexVector& v);

}  // namespace pptlab
