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

#include "pptlab/commutant.hpp"

#include <cmath>
#include <deque>
#include <map>

namespace pptlab {

std::optional<MonomialUnitary> as_monomial(const ComplexMatrix& g, double tol) {
  if (g.rows() != g.cols()) return std::nullopt;
  const int n = static_cast<int>(g.rows());
  MonomialUnitary m{std::vector<int>(n, -1), std::vector<cplx>(n)};
  std::vector<bool> hit(n, false);
  for (int a = 0; a < n; ++a) {
    for (int r = 0; r < n; ++r) {
      if (std::abs(g(r, a)) <= tol) continue;
      if (m.perm[a] >= 0 || hit[r] || std::abs(std::abs(g(r, a)) - 1.0) > tol) return std::nullopt;
      m.perm[a] = r;
      m.phase[a] = g(r, a);
      hit[r] = true;
    }
    if (m.perm[a] < 0) return std::nullopt;
  }
  return m;
}

bool is_local_product(const ComplexMatrix& g, Eigen::Index dim_a, Eigen::Index dim_b, double tol) {
  if (g.rows() != dim_a * dim_b || g.cols() != g.rows()) return false;
  // Realignment: row (i,k), column (j,l) of the reshuffled matrix holds g[(i j),(k l)].
  ComplexMatrix r(dim_a * dim_a, dim_b * dim_b);
  for (Eigen::Index i = 0; i < dim_a; ++i)
    for (Eigen::Index k = 0; k < dim_a; ++k)
      for (Eigen::Index j = 0; j < dim_b; ++j)
        for (Eigen::Index l = 0; l < dim_b; ++l) r(i * dim_a + k, j * dim_b + l) = g(i * dim_b + j, k * dim_b + l);
  Eigen::JacobiSVD<ComplexMatrix> svd(r);
  const auto& s = svd.singularValues();
  return s.size() < 2 || s(1) <= tol * std::max(1.0, s(0));
}

namespace {

using Entry = std::pair<int, cplx>;  // flat index a*dim+b, value

}  // namespace

std::vector<SparseComplex> invariant_hermitian_basis(int dim,
                                                     const std::vector<ComplexMatrix>& generators) {
  if (dim <= 0) throw ContractViolation("dimension must be positive");
  std::vector<MonomialUnitary> gens;
  for (const auto& g : generators) {
    if (g.rows() != dim) throw ContractViolation("generator dimension mismatch");
    auto m = as_monomial(g);
    if (!m) throw ContractViolation("symmetry generator is not a monomial unitary");
    gens.push_back(std::move(*m));
  }

  const int n2 = dim * dim;
  std::vector<int> orbit_of(n2, -1);
  std::vector<std::vector<Entry>> orbits;
  std::vector<bool> consistent;
  for (int root = 0; root < n2; ++root) {
    if (orbit_of[root] >= 0) continue;
    const int id = static_cast<int>(orbits.size());
    std::map<int, cplx> coef{{root, 1.0}};
    orbit_of[root] = id;
    bool ok = true;
    std::deque<int> queue{root};
    while (!queue.empty()) {
      const int cur = queue.front();
      queue.pop_front();
      const int a = cur / dim, b = cur % dim;
      for (const auto& g : gens) {
        const int next = g.perm[a] * dim + g.perm[b];
        const cplx v = g.phase[a] * std::conj(g.phase[b]) * coef[cur];
        auto it = coef.find(next);
        if (it == coef.end()) {
          coef[next] = v;
          orbit_of[next] = id;
          queue.push_back(next);
        } else if (std::abs(it->second - v) > 1e-9) {
          ok = false;
        }
      }
    }
    orbits.emplace_back(coef.begin(), coef.end());
    consistent.push_back(ok);
  }

  auto to_sparse = [&](const std::vector<Entry>& entries) {
    std::vector<Eigen::Triplet<cplx>> trips;
    for (const auto& [idx, v] : entries)
      if (std::abs(v) > 1e-14) trips.emplace_back(idx / dim, idx % dim, v);
    SparseComplex m(dim, dim);
    m.setFromTriplets(trips.begin(), trips.end());
    return m;
  };

  std::vector<SparseComplex> basis;
  std::vector<bool> done(orbits.size(), false);
  for (std::size_t o = 0; o < orbits.size(); ++o) {
    if (done[o]) continue;
    const int root = orbits[o].front().first;
    const int t = orbit_of[(root % dim) * dim + root / dim];
    done[o] = done[t] = true;
    if (!consistent[o] || !consistent[t]) continue;
    // K and K^dagger as entry maps; K^dagger lives on the transposed orbit.
    std::map<int, cplx> k, kd;
    for (const auto& [idx, v] : orbits[o]) {
      k[idx] += v;
      kd[(idx % dim) * dim + idx / dim] += std::conj(v);
    }
    std::vector<std::map<int, cplx>> candidates(2);
    for (const auto& [idx, v] : k) {
      candidates[0][idx] += v;
      candidates[1][idx] += cplx(0, 1) * v;
    }
    for (const auto& [idx, v] : kd) {
      candidates[0][idx] += v;
      candidates[1][idx] -= cplx(0, 1) * v;
    }
    std::vector<std::vector<Entry>> accepted;
    for (auto& cand : candidates) {
      std::vector<Entry> vec(cand.begin(), cand.end());
      for (const auto& q : accepted) {
        double proj = 0.0;
        for (std::size_t i = 0; i < vec.size(); ++i) proj += (std::conj(q[i].second) * vec[i].second).real();
        for (std::size_t i = 0; i < vec.size(); ++i) vec[i].second -= proj * q[i].second;
      }
      double norm = 0.0;
      for (const auto& e : vec) norm += std::norm(e.second);
      norm = std::sqrt(norm);
      if (norm < 1e-9) continue;
      for (auto& e : vec) e.second /= norm;
      accepted.push_back(vec);
    }
    for (const auto& vec : accepted) basis.push_back(to_sparse(vec));
  }
  return basis;
}

}  // namespace pptlab
