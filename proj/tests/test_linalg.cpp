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

#include <random>

#include "pptlab/linalg.hpp"
#include "pptlab/states.hpp"
#include "test_util.hpp"

namespace pptlab {
namespace {

ComplexMatrix bell_projector(int i) { return bell_state(PauliIndex(i)).projector().matrix; }

TEST(Kron, IdentityTimesIdentity) {
  EXPECT_EQ(max_abs_diff(kron(ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(2, 2)),
                         ComplexMatrix::Identity(4, 4)),
            0.0);
}

TEST(Kron, FlipTimesFlipIsAntiDiagonal) {
  const ComplexMatrix x = pauli(PauliIndex(2));
  const ComplexMatrix k = kron(x, x);
  ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
  for (int r = 0; r < 4; ++r) expected(r, 3 - r) = 1.0;
  EXPECT_EQ(max_abs_diff(k, expected), 0.0);
}

TEST(Kron, Dimensions) {
  const ComplexMatrix k = kron(ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(8, 8));
  EXPECT_EQ(k.rows(), 16);
  EXPECT_EQ(k.cols(), 16);
}

TEST(PartialTranspose, ElementaryOperator) {
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m(1, 2) = 1.0;  // |01><10|
  const ComplexMatrix t = partial_transpose(m, 2, 2);
  ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
  expected(3, 0) = 1.0;  // |11><00|
  EXPECT_EQ(max_abs_diff(t, expected), 0.0);
}

TEST(PartialTranspose, BellProjector) {
  const ComplexMatrix expected =
      (bell_projector(0) + bell_projector(1) + bell_projector(2) - bell_projector(3)) / 2.0;
  EXPECT_LE(max_abs_diff(partial_transpose(bell_projector(0), 2, 2), expected), 1e-15);
}

TEST(PartialTranspose, Involution) {
  std::mt19937_64 rng(7);
  for (int d : {2, 3}) {
    const ComplexMatrix m = testing::random_hermitian(d * 3, rng);
    EXPECT_LE(max_abs_diff(partial_transpose(partial_transpose(m, d, 3), d, 3), m), 1e-15);
  }
}

TEST(PartialTranspose, BipartiteOperatorUsesCut) {
  std::mt19937_64 rng(3);
  const ComplexMatrix m = testing::random_hermitian(8, rng);
  const BipartiteOperator op(m, {2, 2, 2}, 1);
  EXPECT_LE(max_abs_diff(partial_transpose(op).matrix, partial_transpose(m, 2, 4)), 1e-15);
}

TEST(PermuteSubsystems, SwapTwoQubits) {
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m(1, 1) = 1.0;
  const std::vector<int> perm = {1, 0};
  const auto out = permute_subsystems(BipartiteOperator(m, {2, 2}, 1), perm);
  EXPECT_EQ(out.matrix(2, 2), cplx(1.0));
  EXPECT_EQ(out.matrix(1, 1), cplx(0.0));
}

TEST(PermuteSubsystems, RoundTrip) {
  std::mt19937_64 rng(11);
  const ComplexMatrix m = testing::random_hermitian(24, rng);
  const BipartiteOperator op(m, {2, 3, 4}, 1);
  const std::vector<int> perm = {2, 0, 1}, inv = {1, 2, 0};
  const auto back = permute_subsystems(permute_subsystems(op, perm), inv);
  EXPECT_EQ(max_abs_diff(back.matrix, m), 0.0);
  EXPECT_EQ(back.factor_dims, op.factor_dims);
}

TEST(PermuteSubsystems, RejectsNonPermutation) {
  const BipartiteOperator op(ComplexMatrix::Identity(4, 4), {2, 2}, 1);
  const std::vector<int> bad = {0, 0};
  EXPECT_THROW(permute_subsystems(op, bad), InvalidPermutation);
}

TEST(EigHermitian, Identity) {
  const auto s = eig_hermitian(ComplexMatrix::Identity(4, 4));
  for (int k = 0; k < 4; ++k) EXPECT_NEAR(s.eigenvalues(k), 1.0, 1e-15);
}

TEST(EigHermitian, BellPartialTranspose) {
  const auto s = eig_hermitian(partial_transpose(bell_projector(0), 2, 2));
  EXPECT_NEAR(s.eigenvalues(0), 0.5, 1e-14);
  EXPECT_NEAR(s.eigenvalues(1), 0.5, 1e-14);
  EXPECT_NEAR(s.eigenvalues(2), 0.5, 1e-14);
  EXPECT_NEAR(s.eigenvalues(3), -0.5, 1e-14);
}

TEST(EigHermitian, DiagonalDescending) {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = 3.0;
  const auto s = eig_hermitian(m);
  EXPECT_NEAR(s.eigenvalues(0), 3.0, 1e-15);
  EXPECT_NEAR(s.eigenvalues(1), 1.0, 1e-15);
}

TEST(EigHermitian, Reconstruction) {
  std::mt19937_64 rng(5);
  const ComplexMatrix m = testing::random_hermitian(9, rng);
  const auto s = eig_hermitian(m);
  const ComplexMatrix back = s.eigenvectors * s.eigenvalues.cast<cplx>().asDiagonal() * s.eigenvectors.adjoint();
  EXPECT_LE(max_abs_diff(back, m), kTolerances.reconstruction);
}

TEST(EigHermitian, RejectsNonHermitian) {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 1) = 1.0;
  EXPECT_THROW(eig_hermitian(m), ContractViolation);
}

TEST(IsPsd, Examples) {
  EXPECT_TRUE(is_psd(ComplexMatrix::Identity(4, 4)));
  EXPECT_FALSE(is_psd(partial_transpose(bell_projector(0), 2, 2), 1e-9));
  EXPECT_TRUE(is_psd(ComplexMatrix::Zero(4, 4)));
}

TEST(PartialTrace, MaximallyEntangledIsMixed) {
  const auto rho = bell_projector(0);
  const ComplexMatrix a = partial_trace(BipartiteOperator(rho, {2, 2}, 1), true);
  EXPECT_LE(max_abs_diff(a, ComplexMatrix::Identity(2, 2) / 2.0), 1e-15);
}

}  // namespace
}  // namespace pptlab
