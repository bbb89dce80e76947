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

#include "pptlab/symmetry.hpp"

#include <cmath>
#include <sstream>

#include "pptlab/states.hpp"

namespace pptlab {

namespace {

constexpr double kPostTol = 1e-9;
const std::vector<int> kChiDims = {2, 2, 2, 2};
constexpr std::array<int, 4> kIdentityLabels = {0, 1, 2, 3};
// (A0 A1 B0 B1) -> (A1 B1 A0 B0)
constexpr int kBlockOrder[4] = {1, 3, 0, 2};

const std::vector<ComplexVector>& chi_vectors() {
  static const std::vector<ComplexVector> v = [] {
    std::vector<ComplexVector> out;
    for (int i = 0; i < 4; ++i) out.push_back(chi_state(i).amplitudes);
    return out;
  }();
  return v;
}

ComplexMatrix pair_op(SymmetryKind kind, int pair, double theta = 0.0, int p = 0) {
  return on_pair(symmetry_unitary(kind, theta, p).matrix, pair, 2);
}

Povm average(const std::vector<Povm>& terms) {
  Povm out = terms.front();
  for (std::size_t k = 1; k < terms.size(); ++k)
    for (std::size_t i = 0; i < out.size(); ++i) out.elements[i].matrix += terms[k].elements[i].matrix;
  for (auto& e : out.elements) e.matrix /= static_cast<double>(terms.size());
  return out;
}

Povm pauli_twirl_pair(const Povm& c, int pair) {
  std::vector<Povm> terms;
  for (int s = 0; s < 4; ++s) {
    terms.push_back(conjugate(c, pair_op(SymmetryKind::PauliPair, pair, 0.0, s), kIdentityLabels));
  }
  return average(terms);
}

double conj_residual(const ComplexMatrix& a, const ComplexMatrix& g, const ComplexMatrix& b) {
  return max_abs_diff(a, g * b * g.adjoint());
}

double pauli_residual(const Povm& c, int pair) {
  double r = 0.0;
  for (int s = 1; s < 4; ++s) {
    const ComplexMatrix g = pair_op(SymmetryKind::PauliPair, pair, 0.0, s);
    for (const auto& e : c.elements) r = std::max(r, conj_residual(e.matrix, g, e.matrix));
  }
  return r;
}

double w_residual(const Povm& c, bool include_zero) {
  const ComplexMatrix w = pair_op(SymmetryKind::W, 0);
  double r = 0.0;
  if (include_zero) r = conj_residual(c.elements[0].matrix, w, c.elements[0].matrix);
  for (int i = 1; i <= 2; ++i) {
    r = std::max(r, conj_residual(c.elements[i + 1].matrix, w, c.elements[i].matrix));
  }
  return r;
}

double u_residual(const Povm& c) {
  const ComplexMatrix u = pair_op(SymmetryKind::U, 0);
  return conj_residual(c.elements[1].matrix, u, c.elements[1].matrix);
}

double v_residual(const Povm& c) {
  double r = 0.0;
  for (double theta : {0.7, M_PI / 2.0, 2.1}) {
    const ComplexMatrix v = pair_op(SymmetryKind::V, 1, theta);
    for (const auto& e : c.elements) r = std::max(r, conj_residual(e.matrix, v, e.matrix));
  }
  return r;
}

void require(bool ok, const std::string& step, const std::string& what, double value) {
  if (!ok) {
    std::ostringstream msg;
    msg << "symmetrize_povm post-condition failed after " << step << ": " << what << " (" << value
        << ")";
    throw std::logic_error(msg.str());
  }
}

}  // namespace

ComplexMatrix Povm::sum() const {
  if (elements.empty()) return {};
  ComplexMatrix s = ComplexMatrix::Zero(elements[0].dim(), elements[0].dim());
  for (const auto& e : elements) s += e.matrix;
  return s;
}

double Povm::completeness_residual() const {
  if (elements.empty()) return std::numeric_limits<double>::infinity();
  const ComplexMatrix s = sum();
  double r = max_abs_diff(s, ComplexMatrix::Identity(s.rows(), s.cols()));
  for (const auto& e : elements) {
    if (!is_hermitian(e.matrix, kTolerances.psd)) return std::numeric_limits<double>::infinity();
    r = std::max(r, -min_eigenvalue(0.5 * (e.matrix + e.matrix.adjoint())));
  }
  return r;
}

bool Povm::is_valid(double tol) const { return completeness_residual() <= tol; }

bool Povm::is_ppt(double tol) const {
  for (const auto& e : elements) {
    const ComplexMatrix pt = partial_transpose(e).matrix;
    if (!is_psd(0.5 * (pt + pt.adjoint()), tol)) return false;
  }
  return true;
}

double success_probability(const Povm& povm, const std::vector<ComplexVector>& states,
                           const std::vector<double>& priors) {
  if (povm.size() != states.size() || states.size() != priors.size()) {
    throw ContractViolation("POVM, states and priors must have equal length");
  }
  double s = 0.0;
  for (std::size_t i = 0; i < states.size(); ++i) {
    s += priors[i] * states[i].dot(povm.elements[i].matrix * states[i]).real();
  }
  return s;
}

double chi_success(const Povm& povm) {
  return success_probability(povm, chi_vectors(), {0.25, 0.25, 0.25, 0.25});
}

Povm conjugate(const Povm& c, const ComplexMatrix& g, const std::array<int, 4>& relabel) {
  Povm out = c;
  for (std::size_t i = 0; i < c.size(); ++i) {
    out.elements[relabel[i]].matrix = g * c.elements[i].matrix * g.adjoint();
  }
  return out;
}

std::array<int, 4> chi_permutation(const ComplexMatrix& g) {
  const auto& chi = chi_vectors();
  std::array<int, 4> out{};
  for (int i = 0; i < 4; ++i) {
    const ComplexVector image = g * chi[i];
    int found = -1;
    for (int j = 0; j < 4; ++j) {
      if (phase_relation(image, chi[j], 1e-10)) found = j;
    }
    if (found < 0) throw ContractViolation("operator does not permute the chi states");
    out[i] = found;
  }
  return out;
}

CovarianceResiduals covariance_residuals(const Povm& n) {
  if (n.size() != 4) throw ContractViolation("expected a four-outcome POVM");
  CovarianceResiduals r;
  r.u_invariance = u_residual(n);
  r.w_covariance = w_residual(n, false);
  r.v_invariance = v_residual(n);
  r.pauli_invariance = std::max(pauli_residual(n, 0), pauli_residual(n, 1));
  return r;
}

std::vector<SymmetrizationStep> symmetrize_povm_steps(const Povm& c) {
  if (c.size() != 4) throw ContractViolation("symmetrize_povm expects four outcomes");
  for (const auto& e : c.elements) {
    if (e.dim() != 16 || e.factor_dims != kChiDims || e.cut != 2) {
      throw ContractViolation("POVM elements must live on the chi space (2,2,2,2 | cut 2)");
    }
  }
  if (!c.is_valid()) throw ContractViolation("symmetrize_povm: input is not a valid POVM");

  const bool input_ppt = c.is_ppt();
  const double input_success = chi_success(c);
  std::vector<SymmetrizationStep> steps;

  auto record = [&](std::string name, Povm p) {
    SymmetrizationStep s{std::move(name), std::move(p), 0.0, false, false};
    s.success = chi_success(s.povm);
    s.valid = s.povm.is_valid(kPostTol);
    s.ppt = s.povm.is_ppt(kPostTol);
    require(s.valid, s.name, "POVM validity", s.povm.completeness_residual());
    require(!input_ppt || s.ppt, s.name, "PPT preserved", 0.0);
    require(std::abs(s.success - input_success) <= kPostTol, s.name, "success preserved",
            s.success - input_success);
    steps.push_back(std::move(s));
    return steps.back().povm;
  };

  // Step 1: Pauli twirl on A0B0.
  const Povm d = record("pauli-twirl-A0B0", pauli_twirl_pair(c, 0));
  require(pauli_residual(d, 0) <= kPostTol, "pauli-twirl-A0B0", "A0B0 Pauli invariance",
          pauli_residual(d, 0));

  // Step 2: average over W and W^dag with the outcome rotation they induce.
  const ComplexMatrix w = pair_op(SymmetryKind::W, 0);
  const Povm f = conjugate(d, w, chi_permutation(w));
  const ComplexMatrix w_dag = w.adjoint();
  const Povm g = conjugate(d, w_dag, chi_permutation(w_dag));
  const Povm j = record("w-cycle-average", average({d, f, g}));
  require(w_residual(j, true) <= kPostTol, "w-cycle-average", "W covariance", w_residual(j, true));

  // Step 3: average with the U-conjugate; U swaps chi_2 and chi_3.
  const ComplexMatrix u = pair_op(SymmetryKind::U, 0);
  const Povm k = conjugate(j, u, chi_permutation(u));
  const Povm l = record("u-average", average({j, k}));
  require(u_residual(l) <= kPostTol, "u-average", "U invariance of element 1", u_residual(l));
  require(w_residual(l, false) <= kPostTol, "u-average", "W covariance", w_residual(l, false));

  // Step 4: V(theta) average on A1B1. Entries pick up e^{ik theta} with |k| <= 2, so four
  // equally spaced angles reproduce the continuous average exactly.
  std::vector<Povm> rotated;
  for (int q = 0; q < 4; ++q) {
    rotated.push_back(conjugate(l, pair_op(SymmetryKind::V, 1, q * M_PI / 2.0), kIdentityLabels));
  }
  const Povm m = record("v-average", average(rotated));
  require(v_residual(m) <= kPostTol, "v-average", "V invariance", v_residual(m));

  // Closing twirl over sigma pairs on A0B0 and A1B1.
  const Povm n = record("pauli-twirl-both", pauli_twirl_pair(pauli_twirl_pair(m, 0), 1));
  const CovarianceResiduals res = covariance_residuals(n);
  require(res.eq1() <= kPostTol, "pauli-twirl-both", "Eq. (1) covariance", res.eq1());
  require(res.eq2() <= kPostTol, "pauli-twirl-both", "Eq. (2) invariance", res.eq2());
  return steps;
}

Povm symmetrize_povm(const Povm& c) { return symmetrize_povm_steps(c).back().povm; }

SymmetricBlocks block_decompose(const BipartiteOperator& n, double tol) {
  if (n.dim() != 16 || n.factor_dims != kChiDims) {
    throw ContractViolation("block_decompose expects an operator on the chi space");
  }
  const ComplexMatrix m = permute_subsystems(n, kBlockOrder, 2).matrix;
  auto block = [&](int o, int p) -> ComplexMatrix { return m.block(4 * o, 4 * p, 4, 4); };
  auto fail = [](const std::string& what, int o, int p, double value) {
    std::ostringstream msg;
    msg << "block_decompose: " << what << " at outer block (" << o << "," << p << "), deviation "
        << value;
    throw StructureViolation(msg.str());
  };

  const bool in_pattern[4][4] = {{true, false, false, true},
                                 {false, true, false, false},
                                 {false, false, true, false},
                                 {true, false, false, true}};
  for (int o = 0; o < 4; ++o) {
    for (int p = 0; p < 4; ++p) {
      if (in_pattern[o][p]) continue;
      const double v = block(o, p).cwiseAbs().maxCoeff();
      if (v > tol) fail("nonzero off-pattern entry", o, p, v);
    }
  }
  const ComplexMatrix pb = block(0, 0), rb = block(1, 1), tb = block(0, 3);
  if (double v = max_abs_diff(block(3, 3), pb); v > tol) fail("P blocks differ", 3, 3, v);
  if (double v = max_abs_diff(block(2, 2), rb); v > tol) fail("R blocks differ", 2, 2, v);
  if (double v = max_abs_diff(block(3, 0), tb); v > tol) fail("T blocks differ", 3, 0, v);

  const ComplexMatrix& bell = bell_basis();
  auto bell_diag = [&](const ComplexMatrix& x, int o, int p) {
    const ComplexMatrix in_bell = bell.adjoint() * x * bell;
    const ComplexMatrix off =
        in_bell - ComplexMatrix(in_bell.diagonal().asDiagonal());
    if (double v = off.cwiseAbs().maxCoeff(); v > tol) fail("block not Bell diagonal", o, p, v);
    if (double v = in_bell.diagonal().imag().cwiseAbs().maxCoeff(); v > tol) {
      fail("block not Hermitian", o, p, v);
    }
    BellDiagonal out;
    for (int i = 0; i < 4; ++i) out.nu[i] = in_bell(i, i).real();
    return out;
  };
  return {bell_diag(pb, 0, 0), bell_diag(rb, 1, 1), bell_diag(tb, 0, 3)};
}

BipartiteOperator reassemble(const SymmetricBlocks& blocks) {
  const ComplexMatrix p = blocks.p.matrix(), r = blocks.r.matrix(), t = blocks.t.matrix();
  ComplexMatrix m = ComplexMatrix::Zero(16, 16);
  m.block(0, 0, 4, 4) = p;
  m.block(0, 12, 4, 4) = t;
  m.block(4, 4, 4, 4) = r;
  m.block(8, 8, 4, 4) = r;
  m.block(12, 0, 4, 4) = t;
  m.block(12, 12, 4, 4) = p;
  // Back from (A1 B1 A0 B0) to (A0 A1 B0 B1): inverse of kBlockOrder.
  constexpr int kInverse[4] = {2, 0, 3, 1};
  return permute_subsystems(BipartiteOperator(std::move(m), {2, 2, 2, 2}, 2), kInverse, 2);
}

}  // namespace pptlab
