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

// Branch-enumerating simulation of the local protocols: teleportation-based
// discrimination of the chi states with a returned catalyst, majorization, the
// multi-copy protocol and the channel experiment.

#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "pptlab/discrimination.hpp"
#include "pptlab/states.hpp"

namespace pptlab {

/// One measurement along a branch: which event, the observed outcome, its
/// conditional probability, and the sum over all outcomes of that event.
struct BranchStep {
  std::string event;
  int outcome = 0;
  double probability = 0.0;
  double outcome_sum = 0.0;
};

struct BranchLeaf {
  std::vector<BranchStep> path;
  double probability = 0.0;
  std::vector<int> decision;
  /// |<Psi_0|residual>|^2 before and after the conditional sigma_1 on B_1 (last copy).
  double pre_correction_fidelity = 0.0;
  double residual_fidelity = 0.0;
};

struct BranchTree {
  std::vector<int> input;
  std::vector<BranchLeaf> leaves;

  double leaf_probability_sum() const;
  /// Largest |outcome_sum - 1| over every measurement event.
  double max_node_defect() const;
  bool zero_error() const;
  /// Smallest residual fidelity over the leaves.
  double min_residual_fidelity() const;
};

/// correction[k] = Pauli applied by Bob on B_2 after Alice's Bell outcome k on (A_0, A_2).
const std::array<int, 4>& teleport_corrections();

/// chi_i on (A0 A1 | B0 B1) plus a Psi_0 resource on (A2 | B2); 4 teleportation branches.
BranchTree catalysis_discriminate(int i);

/// True iff source is majorized by target (source -> target by LOCC), within 1e-12.
bool nielsen_can_transform(const SchmidtVector& source, const SchmidtVector& target);

/// ceil(-1 / log2(1 - delta)) for 0 < delta <= 1/2.
int min_copies(double delta);

/// Least m with beta(delta)^{(x) m} -> Psi_0 by the majorization predicate.
int min_copies_by_majorization(double delta, int max_m = 4096);

/// Converts beta^{(x) min_copies} into Psi_0 (certified by majorization), then
/// identifies each index in turn with the catalyst returned by the previous round.
/// Requires indices.size() >= min_copies(delta).
BranchTree multi_copy_protocol(const std::vector<int>& indices, double delta);

struct LemmaBound {
  double bound = 0.0;
  bool indistinguishable = false;
};

LemmaBound lemma_perturbation_bound(double q, double epsilon);

struct ChannelSpec {
  double delta = 0.3;
  void validate() const;
  /// Output for input i: chi_i (x) beta(delta) shared by the two receivers.
  StateVector output(int i) const;
};

struct ChannelReport {
  double delta = 0.0;
  int shots = 0;
  int min_copies = 0;
  std::optional<PptResult> one_shot;
  bool one_shot_below_two_bits = false;
  bool multi_shot_applicable = false;
  long messages_total = 0;
  long messages_decoded = 0;
  long leaves = 0;
  double bits = 0.0;
  bool zero_error = false;
};

ChannelReport channel_experiment(const ChannelSpec& spec, int shots, const sdp::SolverOptions& options = {},
                                 double margin = 1e-3);

}  // namespace pptlab
