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

#include "pptlab/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace pptlab {

namespace {

constexpr double kGuard = 1e-12;

// Six qubits in canonical order A0 A1 A2 B0 B1 B2.
constexpr int kA0 = 0, kA2 = 2, kB0 = 3, kB1 = 4, kB2 = 5;
const std::vector<int> kDims(6, 2);

ComplexMatrix bell_projector_on(int first, int second, int k) {
  const int targets[2] = {first, second};
  return embed(projector(bell_state(PauliIndex(k)).amplitudes), targets, kDims);
}

ComplexMatrix pauli_on(int qubit, int s) {
  const int targets[1] = {qubit};
  return embed(pauli(PauliIndex(s)), targets, kDims);
}

/// Reduced state of (A1, B1).
ComplexMatrix residual_density(const ComplexVector& psi) {
  const int perm[6] = {1, 4, 0, 2, 3, 5};
  const ComplexVector v = permute_subsystems(psi, kDims, perm);
  // Row-major reshape: the (A1 B1) index is the most significant.
  ComplexMatrix m(4, 16);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 16; ++c) m(r, c) = v(r * 16 + c);
  return m * m.adjoint();
}

double psi0_fidelity(const ComplexMatrix& rho) {
  const ComplexVector p = bell_state(PauliIndex(0)).amplitudes;
  return p.dot(rho * p).real();
}

struct RoundBranch {
  int alice = 0;
  double alice_probability = 0.0;
  double alice_sum = 0.0;
  int bob = 0;
  double bob_probability = 0.0;
  double bob_sum = 0.0;
  double pre_fidelity = 0.0;
  double post_fidelity = 0.0;
  StateVector residual;
};

/// One identification round: input chi_i, two-qubit resource on (A2 | B2).
std::vector<RoundBranch> run_round(int i, const StateVector& resource, const std::array<int, 4>* corrections) {
  const ComplexVector psi = append_pair(chi_state(i), resource).amplitudes;
  std::vector<ComplexVector> alice_post(4);
  std::array<double, 4> alice_p{};
  double alice_sum = 0.0;
  for (int k = 0; k < 4; ++k) {
    alice_post[k] = bell_projector_on(kA0, kA2, k) * psi;
    alice_p[k] = alice_post[k].squaredNorm();
    alice_sum += alice_p[k];
  }
  std::vector<RoundBranch> out;
  for (int k = 0; k < 4; ++k) {
    if (alice_p[k] < kGuard) continue;
    ComplexVector phi = alice_post[k] / std::sqrt(alice_p[k]);
    if (corrections != nullptr) phi = pauli_on(kB2, (*corrections)[k]) * phi;
    std::array<double, 4> bob_p{};
    std::array<ComplexVector, 4> bob_post;
    double bob_sum = 0.0;
    for (int j = 0; j < 4; ++j) {
      bob_post[j] = bell_projector_on(kB2, kB0, j) * phi;
      bob_p[j] = bob_post[j].squaredNorm();
      bob_sum += bob_p[j];
    }
    for (int j = 0; j < 4; ++j) {
      if (bob_p[j] < kGuard) continue;
      RoundBranch b;
      b.alice = k;
      b.alice_probability = alice_p[k];
      b.alice_sum = alice_sum;
      b.bob = j;
      b.bob_probability = bob_p[j];
      b.bob_sum = bob_sum;
      ComplexVector chi = bob_post[j] / std::sqrt(bob_p[j]);
      b.pre_fidelity = psi0_fidelity(residual_density(chi));
      if (j != 0) chi = pauli_on(kB1, 1) * chi;
      const ComplexMatrix rho = residual_density(chi);
      b.post_fidelity = psi0_fidelity(rho);
      const Spectrum s = eig_hermitian(rho);
      if (std::abs(s.eigenvalues(0) - 1.0) > 1e-10) throw std::logic_error("residual pair is not pure");
      ComplexVector v = s.eigenvectors.col(0);
      v.normalize();
      b.residual = StateVector(std::move(v), {2, 2}, 1);
      out.push_back(std::move(b));
    }
  }
  return out;
}

std::array<int, 4> derive_corrections() {
  const StateVector resource = bell_state(PauliIndex(0));
  std::array<int, 4> table{};
  for (int k = 0; k < 4; ++k) {
    bool found = false;
    for (int c = 0; c < 4 && !found; ++c) {
      std::array<int, 4> trial{};
      trial.fill(c);
      bool ok = true;
      for (int i = 0; i < 4 && ok; ++i) {
        for (const auto& b : run_round(i, resource, &trial)) {
          if (b.alice != k) continue;
          ok = ok && b.bob == i && std::abs(b.bob_probability - 1.0) <= kGuard;
        }
      }
      if (ok) {
        table[k] = c;
        found = true;
      }
    }
    if (!found) throw std::logic_error("no Pauli correction found for a teleportation outcome");
  }
  return table;
}

void append_round(const std::vector<int>& indices, std::size_t pos, const StateVector& resource,
                  BranchLeaf prefix, BranchTree& tree) {
  const std::string tag = "copy " + std::to_string(pos);
  for (auto& b : run_round(indices[pos], resource, &teleport_corrections())) {
    BranchLeaf leaf = prefix;
    leaf.path.push_back({"alice Bell measurement (A0,A2) " + tag, b.alice, b.alice_probability, b.alice_sum});
    leaf.path.push_back({"bob Bell measurement (B2,B0) " + tag, b.bob, b.bob_probability, b.bob_sum});
    leaf.probability *= b.alice_probability * b.bob_probability;
    leaf.decision.push_back(b.bob);
    leaf.pre_correction_fidelity = b.pre_fidelity;
    leaf.residual_fidelity = b.post_fidelity;
    if (pos + 1 == indices.size()) {
      tree.leaves.push_back(std::move(leaf));
    } else {
      append_round(indices, pos + 1, b.residual, std::move(leaf), tree);
    }
  }
}

}  // namespace

double BranchTree::leaf_probability_sum() const {
  double s = 0.0;
  for (const auto& l : leaves) s += l.probability;
  return s;
}

double BranchTree::max_node_defect() const {
  double d = 0.0;
  for (const auto& l : leaves)
    for (const auto& st : l.path) d = std::max(d, std::abs(st.outcome_sum - 1.0));
  return d;
}

bool BranchTree::zero_error() const {
  if (leaves.empty() || std::abs(leaf_probability_sum() - 1.0) > kGuard) return false;
  return std::all_of(leaves.begin(), leaves.end(), [&](const BranchLeaf& l) { return l.decision == input; });
}

double BranchTree::min_residual_fidelity() const {
  double f = 1.0;
  for (const auto& l : leaves) f = std::min(f, l.residual_fidelity);
  return leaves.empty() ? 0.0 : f;
}

const std::array<int, 4>& teleport_corrections() {
  static const std::array<int, 4> table = derive_corrections();
  return table;
}

BranchTree catalysis_discriminate(int i) {
  if (i < 0 || i > 3) throw ContractViolation("input index must be in 0..3");
  BranchTree tree;
  tree.input = {i};
  BranchLeaf root;
  root.probability = 1.0;
  append_round(tree.input, 0, bell_state(PauliIndex(0)), std::move(root), tree);
  return tree;
}

bool nielsen_can_transform(const SchmidtVector& source, const SchmidtVector& target) {
  std::set<double> breaks;
  for (const auto* s : {&source, &target}) {
    double k = 0.0;
    for (const auto& r : s->runs()) {
      k += r.multiplicity;
      breaks.insert(k);
    }
  }
  // Prefix sums are piecewise linear between run boundaries.
  return std::all_of(breaks.begin(), breaks.end(),
                     [&](double k) { return source.prefix_sum(k) <= target.prefix_sum(k) + kGuard; });
}

int min_copies(double delta) {
  if (!(delta > 0.0 && delta <= 0.5)) throw ContractViolation("min_copies requires 0 < delta <= 1/2");
  return static_cast<int>(std::ceil(-1.0 / std::log2(1.0 - delta)));
}

int min_copies_by_majorization(double delta, int max_m) {
  if (!(delta > 0.0 && delta <= 0.5)) throw ContractViolation("min_copies requires 0 < delta <= 1/2");
  const SchmidtVector target = SchmidtVector({0.5, 0.5});
  const SchmidtVector base = two_term_schmidt(delta);
  SchmidtVector power = base;
  for (int m = 1; m <= max_m; ++m) {
    if (m > 1) power = SchmidtVector::tensor(power, base);
    if (nielsen_can_transform(power, target)) return m;
  }
  return -1;
}

BranchTree multi_copy_protocol(const std::vector<int>& indices, double delta) {
  const int m = min_copies(delta);
  if (static_cast<int>(indices.size()) < m)
    throw ContractViolation("multi_copy_protocol needs at least min_copies(delta) indices");
  for (int i : indices)
    if (i < 0 || i > 3) throw ContractViolation("input index must be in 0..3");
  // Step 1: beta^{(x) m} -> Psi_0 exists by majorization.
  if (!nielsen_can_transform(SchmidtVector::tensor_power(two_term_schmidt(delta), m), SchmidtVector({0.5, 0.5})))
    throw std::logic_error("beta^m cannot be converted to Psi_0");
  BranchTree tree;
  tree.input = indices;
  BranchLeaf root;
  root.probability = 1.0;
  append_round(indices, 0, bell_state(PauliIndex(0)), std::move(root), tree);
  return tree;
}

LemmaBound lemma_perturbation_bound(double q, double epsilon) {
  if (!(q >= 0.0 && q < 1.0)) throw ContractViolation("q must lie in [0, 1)");
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw ContractViolation("epsilon must lie in [0, 1]");
  return {q + std::sqrt(epsilon), epsilon < (1.0 - q) * (1.0 - q)};
}

void ChannelSpec::validate() const {
  if (!(delta > 0.0 && delta < 0.5)) throw ContractViolation("channel requires 0 < delta < 1/2");
}

StateVector ChannelSpec::output(int i) const {
  validate();
  return append_pair(chi_state(i), two_term_state(delta));
}

ChannelReport channel_experiment(const ChannelSpec& spec, int shots, const sdp::SolverOptions& options,
                                 double margin) {
  spec.validate();
  if (shots < 1) throw ContractViolation("shots must be >= 1");
  ChannelReport rep;
  rep.delta = spec.delta;
  rep.shots = shots;
  rep.min_copies = min_copies(spec.delta);
  if (shots == 1) {
    rep.one_shot = optimal_ppt_success(chi_two_term_instance(spec.delta), options);
    rep.one_shot_below_two_bits =
        rep.one_shot->status == sdp::SdpStatus::optimal && rep.one_shot->certified_bound < 1.0 - margin;
  }
  rep.multi_shot_applicable = shots >= rep.min_copies;
  if (rep.multi_shot_applicable) {
    rep.messages_total = 1;
    for (int s = 0; s < shots; ++s) rep.messages_total *= 4;
    std::vector<int> msg(shots, 0);
    for (long code = 0; code < rep.messages_total; ++code) {
      long c = code;
      for (int s = shots - 1; s >= 0; --s, c /= 4) msg[s] = static_cast<int>(c % 4);
      const BranchTree tree = multi_copy_protocol(msg, spec.delta);
      rep.leaves += static_cast<long>(tree.leaves.size());
      if (tree.zero_error() && tree.max_node_defect() <= kGuard) ++rep.messages_decoded;
    }
    rep.zero_error = rep.messages_decoded == rep.messages_total;
    rep.bits = rep.zero_error ? 2.0 * shots : 0.0;
  }
  return rep;
}

}  // namespace pptlab
