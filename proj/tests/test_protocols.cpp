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

#include "pptlab/protocols.hpp"

namespace pptlab {
namespace {

TEST(Catalysis, Input0NeedsNoCorrection) {
  const auto t = catalysis_discriminate(0);
  ASSERT_EQ(t.leaves.size(), 4u);
  for (const auto& l : t.leaves) {
    EXPECT_EQ(l.decision, std::vector<int>{0});
    EXPECT_NEAR(l.probability, 0.25, 1e-12);
    EXPECT_NEAR(l.pre_correction_fidelity, 1.0, 1e-10);
    EXPECT_NEAR(l.residual_fidelity, 1.0, 1e-10);
  }
}

TEST(Catalysis, Input2CorrectsPsi1) {
  const auto t = catalysis_discriminate(2);
  ASSERT_EQ(t.leaves.size(), 4u);
  for (const auto& l : t.leaves) {
    EXPECT_EQ(l.decision, std::vector<int>{2});
    EXPECT_NEAR(l.pre_correction_fidelity, 0.0, 1e-10);
    EXPECT_NEAR(l.residual_fidelity, 1.0, 1e-10);
  }
}

TEST(Catalysis, AllInputsConserveProbability) {
  for (int i = 0; i < 4; ++i) {
    const auto t = catalysis_discriminate(i);
    EXPECT_TRUE(t.zero_error());
    EXPECT_NEAR(t.leaf_probability_sum(), 1.0, 1e-12);
    EXPECT_LE(t.max_node_defect(), 1e-12);
    EXPECT_GE(t.min_residual_fidelity(), 1.0 - 1e-10);
  }
  EXPECT_THROW(catalysis_discriminate(4), ContractViolation);
}

TEST(Nielsen, Examples) {
  EXPECT_TRUE(nielsen_can_transform(SchmidtVector({0.5, 0.5}), SchmidtVector({0.5, 0.5})));
  EXPECT_FALSE(nielsen_can_transform(SchmidtVector({0.7, 0.3}), SchmidtVector({0.5, 0.5})));
  const auto sq = SchmidtVector::tensor_power(two_term_schmidt(0.3), 2);
  EXPECT_TRUE(nielsen_can_transform(sq, SchmidtVector({0.5, 0.5, 0.0, 0.0})));
}

TEST(MinCopies, Examples) {
  EXPECT_EQ(min_copies(0.5), 1);
  EXPECT_EQ(min_copies(0.3), 2);
  EXPECT_EQ(min_copies(0.1), 7);
  EXPECT_THROW(min_copies(0.0), ContractViolation);
  EXPECT_THROW(min_copies(0.6), ContractViolation);
}

TEST(MinCopies, AgreesWithMajorization) {
  for (int k = 1; k <= 50; ++k) {
    const double delta = 0.5 * k / 50;
    EXPECT_EQ(min_copies(delta), min_copies_by_majorization(delta)) << delta;
  }
}

TEST(MultiCopy, OneThree) {
  const auto t = multi_copy_protocol({1, 3}, 0.3);
  EXPECT_TRUE(t.zero_error());
  for (const auto& l : t.leaves) EXPECT_EQ(l.decision, (std::vector<int>{1, 3}));
  EXPECT_NEAR(t.leaf_probability_sum(), 1.0, 1e-12);
}

TEST(MultiCopy, AllTwoCopyMessages) {
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) EXPECT_TRUE(multi_copy_protocol({a, b}, 0.3).zero_error()) << a << b;
}

TEST(MultiCopy, RejectsTooFewCopies) {
  EXPECT_THROW(multi_copy_protocol({1}, 0.3), ContractViolation);
}

TEST(LemmaBound, Examples) {
  const auto a = lemma_perturbation_bound(0.9, 0.0025);
  EXPECT_NEAR(a.bound, 0.95, 1e-15);
  EXPECT_TRUE(a.indistinguishable);
  const auto b = lemma_perturbation_bound(0.7, 0.0);
  EXPECT_DOUBLE_EQ(b.bound, 0.7);
  EXPECT_TRUE(b.indistinguishable);
  const auto c = lemma_perturbation_bound(0.9, 0.01);
  EXPECT_NEAR(c.bound, 1.0, 1e-15);
  EXPECT_FALSE(c.indistinguishable);
}

TEST(Channel, SpecValidation) {
  EXPECT_THROW((ChannelSpec{0.5}).validate(), ContractViolation);
  EXPECT_THROW((ChannelSpec{0.0}).validate(), ContractViolation);
  const ChannelSpec spec{0.3};
  EXPECT_NO_THROW(spec.validate());
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(spec.output(i).amplitudes.norm(), 1.0, 1e-12);
}

TEST(Channel, TwoAndThreeShots) {
  const ChannelSpec spec{0.3};
  const auto two = channel_experiment(spec, 2);
  EXPECT_TRUE(two.multi_shot_applicable);
  EXPECT_EQ(two.messages_total, 16);
  EXPECT_EQ(two.messages_decoded, 16);
  EXPECT_TRUE(two.zero_error);
  EXPECT_DOUBLE_EQ(two.bits, 4.0);
  const auto three = channel_experiment(spec, 3);
  EXPECT_EQ(three.messages_total, 64);
  EXPECT_EQ(three.messages_decoded, 64);
}

TEST(Channel, OneShotSmallDeltaIsImperfect) {
  const auto r = channel_experiment(ChannelSpec{0.1}, 1);
  ASSERT_TRUE(r.one_shot.has_value());
  EXPECT_TRUE(r.one_shot_below_two_bits);
  EXPECT_LT(r.one_shot->certified_bound, 1.0 - 1e-3);
}

}  // namespace
}  // namespace pptlab
