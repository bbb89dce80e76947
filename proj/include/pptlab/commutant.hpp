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

// Hermitian operators invariant under conjugation by a finite group of monomial
// unitaries (permutation times diagonal phase).

#pragma once

#include <optional>
#include <vector>

#include <Eigen/Sparse>

#include "pptlab/linalg.hpp"

namespace pptlab {

using SparseComplex = Eigen::SparseMatrix<cplx, Eigen::ColMajor>;

/// g|a> = phase[a] |perm[a]>.
struct MonomialUnitary {
  std::vector<int> perm;
  std::vector<cplx> phase;
};

/// Recognizes a unitary with exactly one unit-modulus entry per column and row.
std::optional<MonomialUnitary> as_monomial(const ComplexMatrix& g, double tol = 1e-12);

/// True when g = g_a (x) g_b for the split dim = dim_a * dim_b.
bool is_local_product(const ComplexMatrix& g, Eigen::Index dim_a, Eigen::Index dim_b,
                      double tol = 1e-10);

/// Orthonormal (w.r.t. Re tr(A B)) basis of the Hermitian operators H with
/// g H g^dagger = H for every generator. No generators gives the standard basis
/// of dim^2 elements. Throws ContractViolation for non-monomial generators.
std::vector<SparseComplex> invariant_hermitian_basis(int dim,
                                                     const std::vector<ComplexMatrix>& generators);

}  // namespace pptlab
