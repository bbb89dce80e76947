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

#include <gtest/gtest.h>

#include <cmath>

#include "pptlab/states.hpp"

namespace pptlab {
namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

TEST(BellState, Psi0AndPsi1) {
  const auto b0 = bell_state(PauliIndex(0)).amplitudes;
  const auto b1 = bell_state(PauliIndex(1)).amplitudes;
  ComplexVector e0(4), e1(4);
  e0 << kInvSqrt2, 0, 0, kInvSqrt2;
  e1 << kInvSqrt2, 0, 0, -kInvSqrt2;
  EXPECT_LE((b0 - e0).norm(), 1e-15);
  EXPECT_LE((b1 - e1).norm(), 1e-15);
}

TEST(BellState, OrthonormalBasis) {
  ComplexMatrix g(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      g(i, j) = bell_state(PauliIndex(i)).amplitudes.dot(bell_state(PauliIndex(j)).amplitudes);
  EXPECT_LE((g - ComplexMatrix::Identity(4, 4)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(BellState, Psi3KeepsLiteralPhase) {
  const auto b3 = bell_state(PauliIndex(3)).amplitudes;
  EXPECT_NEAR(std::abs(b3(1) - cplx(0, kInvSqrt2)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(b3(2) - cplx(0, -kInvSqrt2)), 0.0, 1e-15);
}

TEST(PauliIndex, RejectsOutOfRange) {
  EXPECT_THROW(PauliIndex(4), ContractViolation);
  EXPECT_THROW(PauliIndex(-1), ContractViolation);
}

TEST(ChiState, Chi0IsReorderedPsi0Psi0) {
  const std::vector<StateVector> pairs = {bell_state(PauliIndex(0)), bell_state(PauliIndex(0))};
  const auto expected = tensor_pairs(pairs);
  EXPECT_LE((chi_state(0).amplitudes - expected.amplitudes).norm(), 1e-15);
  EXPECT_EQ(chi_state(0).factor_dims, (std::vector<int>{2, 2, 2, 2}));
  EXPECT_EQ(chi_state(0).cut, 2);
}

TEST(ChiState, Chi2IsPsi2Psi1) {
  const std::vector<StateVector> pairs = {bell_state(PauliIndex(2)), bell_state(PauliIndex(1))};
  EXPECT_LE((chi_state(2).amplitudes - tensor_pairs(pairs).amplitudes).norm(), 1e-15);
}

TEST(ChiState, ReducedStateIsMaximallyMixed) {
  for (int i = 0; i < 4; ++i) {
    const ComplexMatrix a = partial_trace(chi_state(i).projector(), true);
    EXPECT_LE((a - ComplexMatrix::Identity(4, 4) / 4.0).cwiseAbs().maxCoeff(), 1e-15) << i;
  }
}

TEST(ChiState, Orthonormal) {
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      EXPECT_NEAR(std::abs(chi_state(i).amplitudes.dot(chi_state(j).amplitudes)), i == j ? 1.0 : 0.0, 1e-15);
}

TEST(MaxEntangled, Examples) {
  EXPECT_NEAR(std::abs(max_entangled(1).amplitudes(0)), 1.0, 1e-15);
  EXPECT_LE((max_entangled(2).amplitudes - bell_state(PauliIndex(0)).amplitudes).norm(), 1e-15);
  const ComplexMatrix pt = partial_transpose(max_entangled(3).projector()).matrix;
  EXPECT_NEAR(max_eigenvalue(pt), 1.0 / 3.0, 1e-14);
}

TEST(TwoTermState, Examples) {
  ComplexVector e(4);
  e << 1, 0, 0, 0;
  EXPECT_LE((two_term_state(0.0).amplitudes - e).norm(), 1e-15);
  EXPECT_LE((two_term_state(0.5).amplitudes - bell_state(PauliIndex(0)).amplitudes).norm(), 1e-15);
  const auto s = two_term_schmidt(0.3).coefficients();
  ASSERT_EQ(s.size(), 2u);
  EXPECT_NEAR(s[0], 0.7, 1e-15);
  EXPECT_NEAR(s[1], 0.3, 1e-15);
  EXPECT_THROW(two_term_state(1.5), ContractViolation);
}

TEST(SchmidtVector, TensorPowerRuns) {
  const auto s = SchmidtVector::tensor_power(two_term_schmidt(0.3), 2).coefficients();
  ASSERT_EQ(s.size(), 4u);
  EXPECT_NEAR(s[0], 0.49, 1e-15);
  EXPECT_NEAR(s[1], 0.21, 1e-15);
  EXPECT_NEAR(s[2], 0.21, 1e-15);
  EXPECT_NEAR(s[3], 0.09, 1e-15);
  const auto big = SchmidtVector::tensor_power(two_term_schmidt(0.1), 200);
  EXPECT_NEAR(big.length(), std::pow(2.0, 200), std::pow(2.0, 200) * 1e-12);
  EXPECT_NEAR(big.prefix_sum(big.length()), 1.0, 1e-10);
}

TEST(SymmetryUnitary, WMapsChi1ToChi2) {
  const ComplexMatrix w = on_pair(symmetry_unitary(SymmetryKind::W).matrix, 0, 2);
  const auto c = phase_relation(w * chi_state(1).amplitudes, chi_state(2).amplitudes);
  ASSERT_TRUE(c.has_value());
  EXPECT_NEAR(std::abs(*c - cplx(1.0)), 0.0, 1e-12);
}

TEST(SymmetryUnitary, UMapsChi3ToMinusChi2) {
  const ComplexMatrix u = on_pair(symmetry_unitary(SymmetryKind::U).matrix, 0, 2);
  const ComplexVector out = u * chi_state(3).amplitudes;
  EXPECT_LE((out + chi_state(2).amplitudes).norm(), 1e-12);
}

TEST(SymmetryUnitary, VFixesEveryChi) {
  const ComplexMatrix v = on_pair(symmetry_unitary(SymmetryKind::V, 0.7).matrix, 1, 2);
  for (int i = 0; i < 4; ++i) EXPECT_LE((v * chi_state(i).amplitudes - chi_state(i).amplitudes).norm(), 1e-12) << i;
}

TEST(SymmetryUnitary, Unitary) {
  for (const char* name : {"W", "U", "V", "sigma1", "sigma2", "sigma3"}) {
    const ComplexMatrix g = symmetry_unitary(name, 0.4).matrix;
    EXPECT_LE((g * g.adjoint() - ComplexMatrix::Identity(4, 4)).cwiseAbs().maxCoeff(), 1e-14) << name;
  }
}

TEST(AppendPair, CanonicalOrder) {
  const auto s = append_pair(bell_state(PauliIndex(2)), bell_state(PauliIndex(1)));
  EXPECT_LE((s.amplitudes - chi_state(2).amplitudes).norm(), 1e-15);
}

}  // namespace
}  // namespace pptlab
