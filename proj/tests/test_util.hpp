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

// Shared generators for tests.

#pragma once

#include <random>

#include "pptlab/linalg.hpp"
#include "pptlab/symmetry.hpp"

namespace pptlab::testing {

inline ComplexMatrix random_hermitian(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  ComplexMatrix m(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) m(r, c) = cplx(g(rng), g(rng));
  return (m + m.adjoint()) / 2.0;
}

/// E_i = I/4 + s H_i with sum_i H_i = 0, s a random fraction of the largest step
/// keeping every E_i and E_i^Gamma PSD. Elements on the chi space (2,2 | 2,2).
inline Povm random_ppt_povm(std::mt19937_64& rng) {
  std::vector<ComplexMatrix> h(4);
  ComplexMatrix mean = ComplexMatrix::Zero(16, 16);
  for (auto& x : h) {
    x = random_hermitian(16, rng);
    mean += x / 4.0;
  }
  for (auto& x : h) x -= mean;
  const ComplexMatrix quarter = ComplexMatrix::Identity(16, 16) / 4.0;
  const auto ok = [&](double s) {
    for (const auto& x : h) {
      const ComplexMatrix e = quarter + s * x;
      if (min_eigenvalue(e) < 0.0 || min_eigenvalue(partial_transpose(e, 4, 4)) < 0.0) return false;
    }
    return true;
  };
  double lo = 0.0, hi = 1.0;
  while (ok(hi)) hi *= 2.0;
  for (int k = 0; k < 50; ++k) (ok((lo + hi) / 2) ? lo : hi) = (lo + hi) / 2;
  const double s = lo * std::uniform_real_distribution<double>(0.05, 1.0)(rng);
  Povm p;
  for (const auto& x : h) p.elements.emplace_back(quarter + s * x, std::vector<int>{2, 2, 2, 2}, 2);
  return p;
}

}  // namespace pptlab::testing
