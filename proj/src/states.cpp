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

#include "pptlab/states.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace pptlab {

PauliIndex::PauliIndex(int value) : value_(value) {
  if (value < 0 || value > 3) throw ContractViolation("Pauli index must be in {0,1,2,3}");
}

ComplexMatrix pauli(PauliIndex i) {
  const cplx I(0.0, 1.0);
  ComplexMatrix s(2, 2);
  switch (i.value()) {
    case 0: s << 1.0, 0.0, 0.0, 1.0; break;
    case 1: s << 1.0, 0.0, 0.0, -1.0; break;
    case 2: s << 0.0, 1.0, 1.0, 0.0; break;
    default: s << 0.0, -I, I, 0.0; break;
  }
  return s;
}

StateVector::StateVector(ComplexVector amps, std::vector<int> dims, int cut_)
    : amplitudes(std::move(amps)), factor_dims(std::move(dims)), cut(cut_) {
  // Validates dims and cut through the operator constructor.
  (void)BipartiteOperator(ComplexMatrix::Zero(amplitudes.size(), amplitudes.size()), factor_dims,
                          cut);
  if (std::abs(amplitudes.norm() - 1.0) > kTolerances.normalization) {
    throw ContractViolation("state vector is not normalized");
  }
}

BipartiteOperator StateVector::projector() const {
  return {pptlab::projector(amplitudes), factor_dims, cut};
}

// ---------------------------------------------------------------------------
// SchmidtVector

namespace {

std::vector<SchmidtVector::Run> normalize_runs(std::vector<SchmidtVector::Run> runs) {
  std::erase_if(runs, [](const auto& r) { return r.multiplicity <= 0.0; });
  std::sort(runs.begin(), runs.end(), [](const auto& a, const auto& b) { return a.value > b.value; });
  std::vector<SchmidtVector::Run> merged;
  for (const auto& r : runs) {
    if (!merged.empty() &&
        std::abs(merged.back().value - r.value) <= 1e-14 * std::max(merged.back().value, r.value)) {
      merged.back().multiplicity += r.multiplicity;
    } else {
      merged.push_back(r);
    }
  }
  return merged;
}

}  // namespace

SchmidtVector::SchmidtVector(std::vector<double> coefficients) {
  for (std::size_t i = 0; i < coefficients.size(); ++i) {
    if (coefficients[i] < 0.0) throw ContractViolation("Schmidt coefficients must be nonnegative");
    if (i > 0 && coefficients[i] > coefficients[i - 1]) {
      throw ContractViolation("Schmidt coefficients must be sorted descending");
    }
  }
  const double sum = std::accumulate(coefficients.begin(), coefficients.end(), 0.0);
  if (std::abs(sum - 1.0) > kTolerances.normalization) {
    throw ContractViolation("Schmidt coefficients must sum to 1");
  }
  std::vector<Run> runs;
  runs.reserve(coefficients.size());
  for (double c : coefficients) runs.push_back({c, 1.0});
  runs_ = normalize_runs(std::move(runs));
}

SchmidtVector SchmidtVector::from_runs(std::vector<Run> runs) {
  SchmidtVector s;
  s.runs_ = normalize_runs(std::move(runs));
  double sum = 0.0;
  for (const auto& r : s.runs_) {
    if (r.value < 0.0) throw ContractViolation("Schmidt coefficients must be nonnegative");
    sum += r.value * r.multiplicity;
  }
  if (std::abs(sum - 1.0) > 1e-10) throw ContractViolation("Schmidt coefficients must sum to 1");
  return s;
}

SchmidtVector SchmidtVector::tensor(const SchmidtVector& a, const SchmidtVector& b) {
  std::vector<Run> runs;
  for (const auto& x : a.runs_)
    for (const auto& y : b.runs_) runs.push_back({x.value * y.value, x.multiplicity * y.multiplicity});
  SchmidtVector s;
  s.runs_ = normalize_runs(std::move(runs));
  return s;
}

SchmidtVector SchmidtVector::tensor_power(const SchmidtVector& base, int m) {
  if (m < 1) throw ContractViolation("tensor power must be >= 1");
  SchmidtVector out = base;
  for (int k = 1; k < m; ++k) out = tensor(out, base);
  return out;
}

double SchmidtVector::length() const {
  double n = 0.0;
  for (const auto& r : runs_) n += r.multiplicity;
  return n;
}

std::vector<double> SchmidtVector::coefficients() const {
  if (length() > 1e7) throw ContractViolation("Schmidt vector too long to expand");
  std::vector<double> out;
  for (const auto& r : runs_) out.insert(out.end(), static_cast<std::size_t>(r.multiplicity), r.value);
  return out;
}

double SchmidtVector::prefix_sum(double k) const {
  double sum = 0.0;
  for (const auto& r : runs_) {
    if (k <= 0.0) break;
    const double take = std::min(k, r.multiplicity);
    sum += take * r.value;
    k -= take;
  }
  return sum;
}

// ---------------------------------------------------------------------------

StateVector bell_state(PauliIndex i) {
  ComplexVector phi(4);
  phi << 1.0, 0.0, 0.0, 1.0;
  phi /= std::sqrt(2.0);
  ComplexVector v = kron(ComplexMatrix::Identity(2, 2), pauli(i)) * phi;
  return {std::move(v), {2, 2}, 1};
}

StateVector tensor_pairs(std::span<const StateVector> pairs) {
  if (pairs.empty()) throw ContractViolation("tensor_pairs needs at least one pair");
  ComplexVector v = ComplexVector::Ones(1);
  std::vector<int> paired_dims;
  for (const auto& p : pairs) {
    if (p.factor_dims.size() != 2) throw ContractViolation("each pair must have two factors");
    v = kron(v, p.amplitudes);
    paired_dims.insert(paired_dims.end(), p.factor_dims.begin(), p.factor_dims.end());
  }
  const int n = static_cast<int>(pairs.size());
  // New factor t: A_t for t < n, B_{t-n} otherwise.
  std::vector<int> perm(2 * n);
  for (int t = 0; t < n; ++t) {
    perm[t] = 2 * t;
    perm[n + t] = 2 * t + 1;
  }
  std::vector<int> dims(2 * n);
  for (int t = 0; t < 2 * n; ++t) dims[t] = paired_dims[perm[t]];
  return {permute_subsystems(v, paired_dims, perm), std::move(dims), n};
}

StateVector append_pair(const StateVector& state, const StateVector& pair) {
  if (pair.factor_dims.size() != 2) throw ContractViolation("appended pair must have two factors");
  const int n_a = state.cut;
  const int n = static_cast<int>(state.factor_dims.size());
  std::vector<int> dims = state.factor_dims;
  dims.insert(dims.end(), pair.factor_dims.begin(), pair.factor_dims.end());
  // Old order: A.., B.., A_new, B_new.
  std::vector<int> perm;
  for (int t = 0; t < n_a; ++t) perm.push_back(t);
  perm.push_back(n);
  for (int t = n_a; t < n; ++t) perm.push_back(t);
  perm.push_back(n + 1);
  std::vector<int> new_dims(perm.size());
  for (std::size_t t = 0; t < perm.size(); ++t) new_dims[t] = dims[perm[t]];
  return {permute_subsystems(kron(state.amplitudes, pair.amplitudes), dims, perm), std::move(new_dims),
          n_a + 1};
}

StateVector chi_state(int i) {
  static constexpr int kFirst[4] = {0, 1, 2, 3};
  static constexpr int kSecond[4] = {0, 1, 1, 1};
  if (i < 0 || i > 3) throw ContractViolation("chi index must be in 0..3");
  const StateVector pairs[2] = {bell_state(PauliIndex(kFirst[i])),
                                bell_state(PauliIndex(kSecond[i]))};
  return tensor_pairs(pairs);
}

StateVector max_entangled(int d) {
  if (d < 1) throw ContractViolation("dimension must be >= 1");
  ComplexVector v = ComplexVector::Zero(d * d);
  for (int j = 0; j < d; ++j) v(j * d + j) = 1.0 / std::sqrt(static_cast<double>(d));
  return {std::move(v), {d, d}, 1};
}

StateVector two_term_state(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw ContractViolation("two_term_state requires 0 <= p <= 1");
  ComplexVector v = ComplexVector::Zero(4);
  v(0) = std::sqrt(1.0 - p);
  v(3) = std::sqrt(p);
  return {std::move(v), {2, 2}, 1};
}

SchmidtVector two_term_schmidt(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw ContractViolation("two_term_schmidt requires 0 <= p <= 1");
  return SchmidtVector({std::max(p, 1.0 - p), std::min(p, 1.0 - p)});
}

BipartiteOperator symmetry_unitary(SymmetryKind kind, double theta, int pauli_index) {
  const cplx I(0.0, 1.0);
  ComplexMatrix a(2, 2), b(2, 2);
  switch (kind) {
    case SymmetryKind::W:
      a << -I, 1.0, -I, -1.0;
      b << I, 1.0, I, -1.0;
      return {0.5 * kron(a, b), {2, 2}, 1};
    case SymmetryKind::U:
      a << 1.0, 0.0, 0.0, -I;
      b << 1.0, 0.0, 0.0, I;
      break;
    case SymmetryKind::V:
      if (!(theta >= 0.0 && theta < 2.0 * M_PI)) {
        throw ContractViolation("V(theta) requires theta in [0, 2pi)");
      }
      a << 1.0, 0.0, 0.0, std::exp(-I * theta);
      b << 1.0, 0.0, 0.0, std::exp(I * theta);
      break;
    case SymmetryKind::PauliPair:
      a = pauli(PauliIndex(pauli_index));
      b = a;
      break;
  }
  return {kron(a, b), {2, 2}, 1};
}

BipartiteOperator symmetry_unitary(std::string_view name, double theta) {
  if (name == "W") return symmetry_unitary(SymmetryKind::W);
  if (name == "U") return symmetry_unitary(SymmetryKind::U);
  if (name == "V") return symmetry_unitary(SymmetryKind::V, theta);
  if (name.size() == 6 && name.starts_with("sigma") && name[5] >= '0' && name[5] <= '3') {
    return symmetry_unitary(SymmetryKind::PauliPair, 0.0, name[5] - '0');
  }
  throw ContractViolation("unknown symmetry unitary '" + std::string(name) + "'");
}

ComplexMatrix on_pair(const ComplexMatrix& op, int pair, int n_pairs) {
  if (pair < 0 || pair >= n_pairs) throw ContractViolation("pair index out of range");
  const std::vector<int> dims(2 * n_pairs, 2);
  const int targets[2] = {pair, n_pairs + pair};
  return embed(op, targets, dims);
}

std::optional<cplx> phase_relation(const ComplexVector& u, const ComplexVector& v, double tol) {
  if (u.size() != v.size()) return std::nullopt;
  const cplx c = v.dot(u);  // <v|u>
  if (std::abs(std::abs(c) - 1.0) > tol) return std::nullopt;
  if ((u - c * v).norm() > tol) return std::nullopt;
  return c;
}

}  // namespace pptlab
