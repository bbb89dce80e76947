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

#pragma once

#include <array>

#include "pptlab/linalg.hpp"

namespace pptlab {

/// sum_i nu_i Psi_i on a 2x2 system.
struct BellDiagonal {
  std::array<double, 4> nu{};

  double trace() const { return nu[0] + nu[1] + nu[2] + nu[3]; }
  ComplexMatrix matrix() const;
  /// M >= 0 and M^Gamma >= 0, decided by 0 <= 2 nu_i <= Tr M.
  bool psd_and_ppt(double tol = kTolerances.psd) const;

  friend bool operator==(const BellDiagonal&, const BellDiagonal&) = default;
};

/// Columns are Psi_0..Psi_3.
const ComplexMatrix& bell_basis();

/// The averaged operator (1/4) sum_i (sigma_i x sigma_i) m (sigma_i x sigma_i).
ComplexMatrix pauli_twirl_average(const ComplexMatrix& m);

/// nu_i = <Psi_i|m|Psi_i>; the twirl average equals sum_i nu_i Psi_i.
BellDiagonal pauli_twirl(const ComplexMatrix& m);

/// Index j with mu_i = Tr M / 2 - nu_j. The entrywise partial-transpose oracle gives
/// j = 3 - i in this Pauli numbering.
constexpr int bell_pt_partner(int i) { return 3 - i; }

/// Coefficients of (sum_i nu_i Psi_i)^Gamma in the Bell basis.
BellDiagonal bell_pt_coeffs(const BellDiagonal& nu);

}  // namespace pptlab
