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

// Symmetrization of four-outcome POVMs on the chi-state space (two qubit pairs,
// canonical order A0 A1 B0 B1) and the block form of fully symmetric elements.

#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "pptlab/bell_diagonal.hpp"
#include "pptlab/linalg.hpp"

namespace pptlab {

struct Povm {
  std::vector<BipartiteOperator> elements;

  std::size_t size() const { return elements.size(); }
  ComplexMatrix sum() const;
  /// Max deviation of sum from I and most negative eigenvalue, both as residuals.
  double completeness_residual() const;
  bool is_valid(double tol = kTolerances.psd) const;
  bool is_ppt(double tol = kTolerances.psd) const;
};

/// Success probability sum_i p_i <psi_i|E_i|psi_i>.
double success_probability(const Povm& povm, const std::vector<ComplexVector>& states,
                           const std::vector<double>& priors);
/// Uniform-prior success on chi_0..chi_3.
double chi_success(const Povm& povm);

/// Relabeled conjugation: out[relabel[i]] = g c[i] g^dagger.
Povm conjugate(const Povm& c, const ComplexMatrix& g, const std::array<int, 4>& relabel);

/// relabel[i] = j where g chi_i equals chi_j up to a phase; throws if g does not permute S.
std::array<int, 4> chi_permutation(const ComplexMatrix& g);

/// Residuals of the covariance conditions: N_1 = U N_1 U^dag and N_{i+1} = W N_i W^dag
/// (eq1), invariance under V(theta) on A1B1 and sigma_j x sigma_j on both pairs (eq2).
struct CovarianceResiduals {
  double u_invariance = 0.0;
  double w_covariance = 0.0;
  double v_invariance = 0.0;
  double pauli_invariance = 0.0;

  double eq1() const { return std::max(u_invariance, w_covariance); }
  double eq2() const { return std::max(v_invariance, pauli_invariance); }
};

CovarianceResiduals covariance_residuals(const Povm& n);

struct SymmetrizationStep {
  std::string name;
  Povm povm;
  double success = 0.0;
  bool valid = false;
  bool ppt = false;
};

/// Steps 1-4 plus the closing twirl, with post-conditions asserted after each.
/// Throws ContractViolation for an invalid input POVM and std::logic_error if a
/// post-condition fails.
std::vector<SymmetrizationStep> symmetrize_povm_steps(const Povm& c);
Povm symmetrize_povm(const Povm& c);

class StructureViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Element in (A1B1)(A0B0) block form:
///   [[P 0 0 T] [0 R 0 0] [0 0 R 0] [T 0 0 P]] with Bell-diagonal P, R, T.
struct SymmetricBlocks {
  BellDiagonal p;
  BellDiagonal r;
  BellDiagonal t;
};

SymmetricBlocks block_decompose(const BipartiteOperator& n, double tol = 1e-10);
BipartiteOperator reassemble(const SymmetricBlocks& blocks);

}  // namespace pptlab
