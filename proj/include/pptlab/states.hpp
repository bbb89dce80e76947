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

// State and unitary constructors.
//
// Pauli numbering: sigma_0 = I, sigma_1 = diag(1,-1), sigma_2 = [[0,1],[1,0]],
// sigma_3 = [[0,-i],[i,0]]. Bell states are Psi_i = (I x sigma_i)(|00>+|11>)/sqrt2
// taken literally, so Psi_3 = i(|01>-|10>)/sqrt2 carries the global phase i.
//
// Multi-pair states are stored in canonical order A_0 A_1 ... B_0 B_1 ... with the
// cut after the last A factor; tensor_pairs() performs the reshuffle from the
// (A_0 B_0)(A_1 B_1)... pairing.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include "pptlab/linalg.hpp"

namespace pptlab {

class PauliIndex {
 public:
  explicit PauliIndex(int value);
  int value() const { return value_; }

 private:
  int value_;
};

ComplexMatrix pauli(PauliIndex i);

struct StateVector {
  ComplexVector amplitudes;
  std::vector<int> factor_dims;
  int cut = 1;

  StateVector() = default;
  StateVector(ComplexVector amps, std::vector<int> dims, int cut);

  Eigen::Index dim() const { return amplitudes.size(); }
  BipartiteOperator projector() const;
};

/// Schmidt coefficients stored as descending runs (value, multiplicity), so tensor
/// powers with astronomically many coefficients stay cheap.
class SchmidtVector {
 public:
  struct Run {
    double value;
    double multiplicity;
  };

  SchmidtVector() = default;
  explicit SchmidtVector(std::vector<double> coefficients);

  static SchmidtVector from_runs(std::vector<Run> runs);
  static SchmidtVector tensor(const SchmidtVector& a, const SchmidtVector& b);
  static SchmidtVector tensor_power(const SchmidtVector& base, int m);

  const std::vector<Run>& runs() const { return runs_; }
  double length() const;
  double largest() const { return runs_.empty() ? 0.0 : runs_.front().value; }
  /// Expanded coefficient list; throws when the expansion would be huge.
  std::vector<double> coefficients() const;
  /// Sum of the k largest coefficients (k may be fractional inside a run).
  double prefix_sum(double k) const;

 private:
  std::vector<Run> runs_;
};

StateVector bell_state(PauliIndex i);
StateVector chi_state(int i);
StateVector max_entangled(int d);
/// sqrt(1-p)|00> + sqrt(p)|11>.
StateVector two_term_state(double p);
SchmidtVector two_term_schmidt(double p);

/// Combines bipartite pair states (A_k B_k) into one state in canonical order.
StateVector tensor_pairs(std::span<const StateVector> pairs);
/// state on A_0..A_{n-1} | B_0..B_{n-1} times pair on A_n | B_n, canonical order.
StateVector append_pair(const StateVector& state, const StateVector& pair);

enum class SymmetryKind { W, U, V, PauliPair };

/// The 4x4 local unitaries on one (A_j, B_j) qubit pair.
BipartiteOperator symmetry_unitary(SymmetryKind kind, double theta = 0.0, int pauli = 0);
/// Names: "W", "U", "V", "sigma0".."sigma3".
BipartiteOperator symmetry_unitary(std::string_view name, double theta = 0.0);

/// Lifts a pair operator onto pair `pair` of an n-pair qubit system in canonical order.
ComplexMatrix on_pair(const ComplexMatrix& op, int pair, int n_pairs);

/// c with |c| = 1 and ||u - c v|| <= tol, if any.
std::optional<cplx> phase_relation(const ComplexVector& u, const ComplexVector& v,
                                   double tol = 1e-12);

}  // namespace pptlab
