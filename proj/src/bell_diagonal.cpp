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

#include "pptlab/bell_diagonal.hpp"

#include "pptlab/states.hpp"

namespace pptlab {

const ComplexMatrix& bell_basis() {
  static const ComplexMatrix basis = [] {
    ComplexMatrix b(4, 4);
    for (int i = 0; i < 4; ++i) b.col(i) = bell_state(PauliIndex(i)).amplitudes;
    return b;
  }();
  return basis;
}

ComplexMatrix BellDiagonal::matrix() const {
  Eigen::Vector4cd d;
  for (int i = 0; i < 4; ++i) d(i) = nu[i];
  return bell_basis() * d.asDiagonal() * bell_basis().adjoint();
}

bool BellDiagonal::psd_and_ppt(double tol) const {
  const double tr = trace();
  for (double v : nu) {
    if (2.0 * v < -tol || 2.0 * v > tr + tol) return false;
  }
  return true;
}

ComplexMatrix pauli_twirl_average(const ComplexMatrix& m) {
  if (m.rows() != 4 || m.cols() != 4) throw ContractViolation("pauli_twirl expects a 4x4 operator");
  ComplexMatrix sum = ComplexMatrix::Zero(4, 4);
  for (int i = 0; i < 4; ++i) {
    const ComplexMatrix s = kron(pauli(PauliIndex(i)), pauli(PauliIndex(i)));
    sum += s * m * s.adjoint();
  }
  return sum / 4.0;
}

BellDiagonal pauli_twirl(const ComplexMatrix& m) {
  if (m.rows() != 4 || m.cols() != 4) throw ContractViolation("pauli_twirl expects a 4x4 operator");
  BellDiagonal out;
  const ComplexMatrix& b = bell_basis();
  for (int i = 0; i < 4; ++i) out.nu[i] = b.col(i).dot(m * b.col(i)).real();
  return out;
}

BellDiagonal bell_pt_coeffs(const BellDiagonal& nu) {
  const double half_trace = nu.trace() / 2.0;
  BellDiagonal mu;
  for (int i = 0; i < 4; ++i) mu.nu[i] = half_trace - nu.nu[bell_pt_partner(i)];
  return mu;
}

}  // namespace pptlab
