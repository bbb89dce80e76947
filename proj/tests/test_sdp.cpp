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
#include <random>

#include "pptlab/bell_diagonal.hpp"
#include "pptlab/commutant.hpp"
#include "pptlab/discrimination.hpp"
#include "pptlab/states.hpp"

namespace pptlab {
namespace {

using sdp::SdpStatus;

// Values from an independent conic solver run, frozen.
constexpr double kChiOptimum = 0.875;
constexpr double kFourBellOptimum = 0.5;
constexpr double kThreshold070 = 0.998716;
constexpr double kThreshold075 = 0.991582;
constexpr double kThreshold080 = 0.977124;

sdp::SdpProblem<cplx> projector_problem() {
  const ComplexMatrix proj = bell_state(PauliIndex(0)).projector().matrix;
  const auto basis = invariant_hermitian_basis(4, {});
  sdp::SdpProblem<cplx> p;
  p.num_vars = static_cast<int>(basis.size());
  p.b.resize(p.num_vars);
  sdp::SdpBlock<cplx> lower{4, ComplexMatrix::Zero(4, 4), {}}, upper{4, ComplexMatrix::Identity(4, 4), {}};
  for (int k = 0; k < p.num_vars; ++k) {
    p.b(k) = ComplexMatrix(basis[k]).cwiseProduct(proj.conjugate()).sum().real();
    lower.terms.emplace_back(k, -basis[k]);
    upper.terms.emplace_back(k, basis[k]);
  }
  p.blocks = {lower, upper};
  return p;
}

sdp::SdpProblem<double> scalar_problem(double lo, double hi) {
  // max y s.t. y - lo >= 0, hi - y >= 0
  sdp::SdpProblem<double> p;
  p.num_vars = 1;
  p.b = Eigen::VectorXd::Ones(1);
  sdp::SparseMatrix<double> one(1, 1), minus(1, 1);
  one.insert(0, 0) = 1.0;
  minus.insert(0, 0) = -1.0;
  sdp::SdpBlock<double> a{1, Eigen::MatrixXd::Constant(1, 1, -lo), {{0, minus}}};
  sdp::SdpBlock<double> b{1, Eigen::MatrixXd::Constant(1, 1, hi), {{0, one}}};
  p.blocks = {a, b};
  return p;
}

std::vector<StateVector> bells(std::initializer_list<int> idx) {
  std::vector<StateVector> out;
  for (int i : idx) out.push_back(bell_state(PauliIndex(i)));
  return out;
}

TEST(Solver, ProjectorSaturates) {
  const auto sol = sdp::solve(projector_problem());
  EXPECT_EQ(sol.status, SdpStatus::optimal);
  EXPECT_NEAR(sol.primal_value, 1.0, 1e-6);
  EXPECT_NEAR(sol.dual_value, 1.0, 1e-6);
  EXPECT_LE(std::abs(sol.duality_gap), 1e-7);
  ASSERT_FALSE(sol.gap_history.empty());
}

TEST(Solver, RealScalar) {
  const auto sol = sdp::solve(scalar_problem(-1.0, 2.5));
  EXPECT_EQ(sol.status, SdpStatus::optimal);
  EXPECT_NEAR(sol.primal_value, 2.5, 1e-6);
  EXPECT_NEAR(sol.y(0), 2.5, 1e-6);
}

TEST(Solver, DetectsInfeasible) {
  const auto sol = sdp::solve(scalar_problem(1.0, 0.0));
  EXPECT_EQ(sol.status, SdpStatus::infeasible);
}

TEST(Solver, IterationCap) {
  sdp::SolverOptions opt;
  opt.max_iters = 2;
  const auto sol = sdp::solve(projector_problem(), opt);
  EXPECT_EQ(sol.status, SdpStatus::max_iterations);
  EXPECT_LE(sol.iterations, 2);
}

TEST(Solver, Deterministic) {
  const auto a = sdp::solve(projector_problem());
  const auto b = sdp::solve(projector_problem());
  EXPECT_EQ(a.primal_value, b.primal_value);
  EXPECT_EQ(a.iterations, b.iterations);
}

TEST(Solver, ValidatesShapes) {
  auto p = projector_problem();
  p.blocks[0].terms.emplace_back(p.num_vars, p.blocks[0].terms[0].second);
  EXPECT_THROW(sdp::solve(p), std::invalid_argument);
  auto q = projector_problem();
  q.b.resize(1);
  EXPECT_THROW(sdp::solve(q), std::invalid_argument);
}

TEST(Solver, SplitsIndependentBlocks) {
  const auto sol = sdp::solve(scalar_problem(0.0, 1.0));
  EXPECT_GE(sol.num_components, 1u);
  EXPECT_EQ(sol.x.size(), 2u);
  EXPECT_EQ(sol.z.size(), 2u);
}

TEST(BuildPpt, Structure) {
  const auto two = build_ppt_discrimination(DiscriminationInstance::uniform(bells({0, 1})));
  EXPECT_EQ(two.outcomes, 2);
  EXPECT_EQ(two.sdp.blocks.size(), 4u);
  EXPECT_EQ(two.sdp.num_vars, 16);
  const auto chi = build_ppt_discrimination(chi_instance());
  EXPECT_EQ(chi.outcomes, 4);
  EXPECT_EQ(chi.sdp.blocks.size(), 8u);
  for (const auto& blk : chi.sdp.blocks) EXPECT_EQ(blk.dim, 16);
}

TEST(BuildPpt, DegeneratePriorsTouchOnlyFirst) {
  auto inst = chi_instance();
  inst.priors = {1.0, 0.0, 0.0, 0.0};
  const auto p = build_ppt_discrimination(inst);
  EXPECT_LE(p.weighted_states[1].norm() + p.weighted_states[2].norm() + p.weighted_states[3].norm(), 0.0);
  EXPECT_GT(p.weighted_states[0].norm(), 0.0);
}

TEST(Instance, ValidateRejectsBadPriors) {
  auto inst = chi_instance();
  inst.priors = {0.5, 0.5, 0.5, -0.5};
  EXPECT_THROW(inst.validate(), ContractViolation);
  inst = chi_instance();
  inst.symmetries.push_back(ComplexMatrix::Identity(16, 16) * cplx(0, 1) * 2.0);
  EXPECT_THROW(inst.validate(), ContractViolation);
}

TEST(OptimalPpt, TwoBellStatesPerfect) {
  const auto r = optimal_ppt_success(DiscriminationInstance::uniform(bells({0, 1})));
  EXPECT_EQ(r.status, SdpStatus::optimal);
  EXPECT_NEAR(r.value, 1.0, 1e-6);
}

TEST(OptimalPpt, FourBellStates) {
  const auto r = optimal_ppt_success(DiscriminationInstance::uniform(bells({0, 1, 2, 3})));
  EXPECT_EQ(r.status, SdpStatus::optimal);
  EXPECT_NEAR(r.value, kFourBellOptimum, 1e-6);
  EXPECT_NEAR(r.certified_bound, kFourBellOptimum, 1e-6);
  EXPECT_GE(r.certified_bound, r.value - 1e-9);
}

TEST(OptimalPpt, ChiStates) {
  const auto r = optimal_ppt_success(chi_instance());
  EXPECT_EQ(r.status, SdpStatus::optimal);
  EXPECT_NEAR(r.value, kChiOptimum, 1e-6);
  EXPECT_LE(r.certified_bound, 1.0 - 1e-3);
  EXPECT_GE(r.certified_bound, r.value);
  EXPECT_LE(r.duality_gap, 1e-7);
  EXPECT_LE(r.completeness_residual, 1e-7);
  EXPECT_GE(r.min_eigenvalue, -1e-7);
  EXPECT_GE(r.min_pt_eigenvalue, -1e-7);
  EXPECT_NEAR(success_probability(chi_instance(), r.povm), r.value, 1e-9);
}

TEST(OptimalPpt, ChiStatesWithoutSymmetryReduction) {
  auto inst = chi_instance();
  inst.symmetries.clear();
  const auto r = optimal_ppt_success(inst);
  EXPECT_EQ(r.status, SdpStatus::optimal);
  EXPECT_NEAR(r.value, kChiOptimum, 1e-6);
}

TEST(OptimalPpt, TwoChiStatesPerfect) {
  const auto r = optimal_ppt_success(DiscriminationInstance::uniform({chi_state(0), chi_state(1)}));
  EXPECT_NEAR(r.value, 1.0, 1e-6);
}

TEST(OptimalPpt, PerturbedChiBelowLemmaBound) {
  const double eps = 1e-3;
  const auto r = optimal_ppt_success(chi_two_term_instance(eps));
  EXPECT_EQ(r.status, SdpStatus::optimal);
  EXPECT_LE(r.value, kChiOptimum + std::sqrt(eps) + 1e-6);
  EXPECT_LT(r.certified_bound, 1.0 - 1e-4);
}

TEST(Certificate, VerifierRejectsTamperedCertificate) {
  const auto r = optimal_ppt_success(chi_instance());
  auto cert = r.certificate;
  cert.y *= 0.5;
  const auto check = verify_certificate(chi_instance(), cert);
  EXPECT_GT(check.slack, 1e-3);
  EXPECT_GE(check.bound, r.value);
}

TEST(TraceBound, Examples) {
  const auto id = trace_bound_check({ComplexMatrix::Identity(4, 4), {2, 2}, 1}, 2);
  EXPECT_TRUE(id.applicable);
  EXPECT_TRUE(id.passes);
  EXPECT_NEAR(id.trace, 4.0, 1e-12);
  const BellDiagonal three{{1, 1, 1, 0}};
  EXPECT_TRUE(three.psd_and_ppt());
  const auto t3 = trace_bound_check({three.matrix(), {2, 2}, 1}, 2);
  EXPECT_TRUE(t3.applicable);
  EXPECT_TRUE(t3.passes);
  EXPECT_NEAR(t3.trace, 3.0, 1e-12);
  const auto one = trace_bound_check(bell_state(PauliIndex(0)).projector(), 2);
  EXPECT_FALSE(one.applicable);
  EXPECT_NEAR(one.ppt_residual, 0.5, 1e-12);
}

TEST(TraceBound, RandomOperators) {
  std::mt19937_64 rng(99);
  for (int d : {2, 3}) {
    for (int k = 0; k < 50; ++k) {
      const auto r = trace_bound_check(random_ppt_fixing_phi(d, rng), d);
      EXPECT_TRUE(r.applicable);
      EXPECT_TRUE(r.passes);
    }
  }
}

TEST(RandomStates, OrthogonalMaximallyEntangled) {
  std::mt19937_64 rng(4);
  const auto states = random_orthogonal_max_entangled(3, 4, rng);
  ASSERT_EQ(states.size(), 4u);
  for (std::size_t i = 0; i < states.size(); ++i) {
    const ComplexMatrix a = partial_trace(states[i].projector(), true);
    EXPECT_LE(max_abs_diff(a, ComplexMatrix::Identity(3, 3) / 3.0), 1e-12);
    for (std::size_t j = 0; j < i; ++j) EXPECT_LE(std::abs(states[i].amplitudes.dot(states[j].amplitudes)), 1e-12);
  }
}

TEST(Threshold, KnownPoints) {
  const auto sweep = threshold_sweep({0.6, 2.0 / 3.0, 0.7, 0.75, 0.8});
  ASSERT_EQ(sweep.points.size(), 5u);
  EXPECT_NEAR(sweep.points[0].result.value, 1.0, 1e-5);
  EXPECT_NEAR(sweep.points[1].result.value, 1.0, 1e-5);
  EXPECT_NEAR(sweep.points[2].result.value, kThreshold070, 1e-5);
  EXPECT_NEAR(sweep.points[3].result.value, kThreshold075, 1e-5);
  EXPECT_NEAR(sweep.points[4].result.value, kThreshold080, 1e-5);
  EXPECT_TRUE(sweep.bracketed);
  EXPECT_NEAR(sweep.last_perfect, 2.0 / 3.0, 1e-12);
  EXPECT_NEAR(sweep.first_imperfect, 0.7, 1e-12);
}

}  // namespace
}  // namespace pptlab
