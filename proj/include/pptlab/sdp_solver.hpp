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

// Small primal-dual interior-point SDP solver with Nesterov-Todd scaling.
//
// Standard pair, over Hermitian (or real symmetric) blocks j:
//
//   max  b^T y + offset     s.t.  Z_j = C_j - sum_k y_k A_jk  >= 0
//   min  sum_j <C_j, X_j> + offset   s.t.  sum_j <A_jk, X_j> = b_k,  X_j >= 0
//
// with <A, B> = Re tr(A^H B). The max side holds the measurement variables; the
// min side is the certificate. Blocks are split into connected components of
// their joint sparsity pattern before solving.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace pptlab::sdp {

enum class SdpStatus { optimal, infeasible, max_iterations };

inline std::string to_string(SdpStatus s) {
  switch (s) {
    case SdpStatus::optimal: return "optimal";
    case SdpStatus::infeasible: return "infeasible";
    case SdpStatus::max_iterations: return "max-iterations";
  }
  return "unknown";
}

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using SparseMatrix = Eigen::SparseMatrix<Scalar, Eigen::ColMajor>;

template <typename Scalar>
struct SdpBlock {
  int dim = 0;
  DenseMatrix<Scalar> c;
  /// Nonzero coefficient matrices (variable index, A_jk); each Hermitian.
  std::vector<std::pair<int, SparseMatrix<Scalar>>> terms;
};

template <typename Scalar>
struct SdpProblem {
  int num_vars = 0;
  std::vector<SdpBlock<Scalar>> blocks;
  Eigen::VectorXd b;
  double offset = 0.0;

  /// Throws std::invalid_argument on shape errors or out-of-range variable indices.
  void validate() const;
};

struct SolverOptions {
  double gap_tol = 1e-7;
  double feas_tol = 1e-8;
  int max_iters = 200;
  double step_factor = 0.95;
};

template <typename Scalar>
struct StartPoint {
  Eigen::VectorXd y;
  std::vector<DenseMatrix<Scalar>> x;
};

template <typename Scalar>
struct SdpSolution {
  SdpStatus status = SdpStatus::max_iterations;
  int iterations = 0;
  /// b^T y + offset: value attained by the measurement side (lower bound when feasible).
  double primal_value = 0.0;
  /// <C, X> + offset: certificate value (upper bound when X is feasible).
  double dual_value = 0.0;
  double duality_gap = 0.0;
  /// Relative residual of Z = C - A^T y.
  double primal_residual = 0.0;
  /// Relative residual of A(X) = b.
  double dual_residual = 0.0;
  Eigen::VectorXd y;
  std::vector<DenseMatrix<Scalar>> z;
  std::vector<DenseMatrix<Scalar>> x;
  std::vector<double> gap_history;
  std::size_t num_components = 0;
};

namespace detail {

template <typename Scalar>
double real_part(Scalar v) {
  if constexpr (std::is_same_v<Scalar, double>) {
    return v;
  } else {
    return v.real();
  }
}

template <typename Scalar>
double inner(const DenseMatrix<Scalar>& a, const DenseMatrix<Scalar>& b) {
  return real_part<Scalar>(a.cwiseProduct(b.conjugate()).sum());
}

template <typename Scalar>
double inner(const SparseMatrix<Scalar>& a, const DenseMatrix<Scalar>& b) {
  double s = 0.0;
  for (int col = 0; col < a.outerSize(); ++col)
    for (typename SparseMatrix<Scalar>::InnerIterator it(a, col); it; ++it)
      s += real_part<Scalar>(Eigen::numext::conj(it.value()) * b(it.row(), it.col()));
  return s;
}

template <typename Scalar>
DenseMatrix<Scalar> hermitize(const DenseMatrix<Scalar>& m) {
  return (m + m.adjoint()) / 2.0;
}

/// Largest alpha in (0, inf] with x + alpha dx >= 0, given the Cholesky factor of x.
template <typename Scalar>
double max_step(const Eigen::LLT<DenseMatrix<Scalar>>& chol, const DenseMatrix<Scalar>& dx) {
  const auto& l = chol.matrixL();
  DenseMatrix<Scalar> t = l.solve(dx);
  t = l.solve(DenseMatrix<Scalar>(t.adjoint()));
  Eigen::SelfAdjointEigenSolver<DenseMatrix<Scalar>> es(hermitize<Scalar>(t), Eigen::EigenvaluesOnly);
  const double lmin = es.eigenvalues().minCoeff();
  return lmin >= 0 ? std::numeric_limits<double>::infinity() : -1.0 / lmin;
}

struct Component {
  int block = 0;
  std::vector<int> indices;
};

template <typename Scalar>
std::vector<Component> split_components(const SdpProblem<Scalar>& p) {
  std::vector<Component> out;
  for (int j = 0; j < static_cast<int>(p.blocks.size()); ++j) {
    const auto& blk = p.blocks[j];
    std::vector<int> parent(blk.dim);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int a) {
      while (parent[a] != a) a = parent[a] = parent[parent[a]];
      return a;
    };
    std::vector<bool> touched(blk.dim, false);
    auto link = [&](int a, int b) {
      touched[a] = touched[b] = true;
      parent[find(a)] = find(b);
    };
    for (int r = 0; r < blk.dim; ++r)
      for (int c = 0; c < blk.dim; ++c)
        if (blk.c(r, c) != Scalar(0)) link(r, c);
    for (const auto& [k, a] : blk.terms)
      for (int col = 0; col < a.outerSize(); ++col)
        for (typename SparseMatrix<Scalar>::InnerIterator it(a, col); it; ++it)
          if (it.value() != Scalar(0)) link(static_cast<int>(it.row()), static_cast<int>(it.col()));
    std::vector<int> slot(blk.dim, -1);
    std::vector<Component> local;
    for (int r = 0; r < blk.dim; ++r) {
      if (!touched[r]) continue;
      const int root = find(r);
      if (slot[root] < 0) {
        slot[root] = static_cast<int>(local.size());
        local.push_back({j, {}});
      }
      local[slot[root]].indices.push_back(r);
    }
    out.insert(out.end(), local.begin(), local.end());
  }
  return out;
}

template <typename Scalar>
DenseMatrix<Scalar> restrict_dense(const DenseMatrix<Scalar>& m, const std::vector<int>& idx) {
  const int n = static_cast<int>(idx.size());
  DenseMatrix<Scalar> out(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) out(r, c) = m(idx[r], idx[c]);
  return out;
}

template <typename Scalar>
SparseMatrix<Scalar> restrict_sparse(const SparseMatrix<Scalar>& m, const std::vector<int>& idx,
                                     int full_dim) {
  std::vector<int> pos(full_dim, -1);
  for (int i = 0; i < static_cast<int>(idx.size()); ++i) pos[idx[i]] = i;
  std::vector<Eigen::Triplet<Scalar>> trips;
  for (int col = 0; col < m.outerSize(); ++col)
    for (typename SparseMatrix<Scalar>::InnerIterator it(m, col); it; ++it)
      if (pos[it.row()] >= 0 && pos[it.col()] >= 0)
        trips.emplace_back(pos[it.row()], pos[it.col()], it.value());
  SparseMatrix<Scalar> out(static_cast<int>(idx.size()), static_cast<int>(idx.size()));
  out.setFromTriplets(trips.begin(), trips.end());
  return out;
}

/// Core solver on an already split problem.
template <typename Scalar>
SdpSolution<Scalar> solve_split(const SdpProblem<Scalar>& p, const SolverOptions& opt,
                                const StartPoint<Scalar>* start) {
  using Dense = DenseMatrix<Scalar>;
  const int m = p.num_vars;
  const std::size_t nb = p.blocks.size();
  int n_total = 0;
  for (const auto& blk : p.blocks) n_total += blk.dim;

  auto apply_at = [&](const Eigen::VectorXd& y, std::size_t j) {
    Dense s = Dense::Zero(p.blocks[j].dim, p.blocks[j].dim);
    for (const auto& [k, a] : p.blocks[j].terms) s += y(k) * Dense(a);
    return s;
  };
  auto apply_a = [&](const std::vector<Dense>& x) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(m);
    for (std::size_t j = 0; j < nb; ++j)
      for (const auto& [k, a] : p.blocks[j].terms) v(k) += inner<Scalar>(a, x[j]);
    return v;
  };

  double c_norm = 0.0;
  for (const auto& blk : p.blocks) c_norm += blk.c.squaredNorm();
  c_norm = std::sqrt(c_norm);
  const double b_norm = p.b.norm();

  Eigen::VectorXd y = Eigen::VectorXd::Zero(m);
  std::vector<Dense> x(nb), z(nb);
  bool warm = false;
  if (start != nullptr && start->y.size() == m && start->x.size() == nb) {
    warm = true;
    for (std::size_t j = 0; j < nb && warm; ++j) {
      z[j] = hermitize<Scalar>(p.blocks[j].c - apply_at(start->y, j));
      x[j] = hermitize<Scalar>(start->x[j]);
      warm = Eigen::LLT<Dense>(z[j]).info() == Eigen::Success &&
             Eigen::LLT<Dense>(x[j]).info() == Eigen::Success;
    }
    if (warm) y = start->y;
  }
  if (!warm) {
    double xi = std::max(10.0, std::sqrt(static_cast<double>(n_total)));
    double eta = std::max(10.0, c_norm);
    for (std::size_t j = 0; j < nb; ++j) {
      for (const auto& [k, a] : p.blocks[j].terms) {
        const double an = a.norm();
        xi = std::max(xi, n_total * (1.0 + std::abs(p.b(k))) / (1.0 + an));
        eta = std::max(eta, an);
      }
    }
    for (std::size_t j = 0; j < nb; ++j) {
      x[j] = xi * Dense::Identity(p.blocks[j].dim, p.blocks[j].dim);
      z[j] = eta * Dense::Identity(p.blocks[j].dim, p.blocks[j].dim);
    }
  }

  SdpSolution<Scalar> sol;
  for (int iter = 0;; ++iter) {
    const Eigen::VectorXd rp = p.b - apply_a(x);
    std::vector<Dense> rd(nb);
    double rd_norm = 0.0, xz = 0.0, cx = 0.0;
    for (std::size_t j = 0; j < nb; ++j) {
      rd[j] = p.blocks[j].c - apply_at(y, j) - z[j];
      rd_norm += rd[j].squaredNorm();
      xz += inner<Scalar>(x[j], z[j]);
      cx += inner<Scalar>(p.blocks[j].c, x[j]);
    }
    sol.primal_value = p.b.dot(y) + p.offset;
    sol.dual_value = cx + p.offset;
    sol.duality_gap = sol.dual_value - sol.primal_value;
    sol.primal_residual = std::sqrt(rd_norm) / (1.0 + c_norm);
    sol.dual_residual = rp.norm() / (1.0 + b_norm);
    sol.iterations = iter;
    sol.gap_history.push_back(sol.duality_gap);

    if (sol.primal_residual <= opt.feas_tol && sol.dual_residual <= opt.feas_tol &&
        std::max(std::abs(sol.duality_gap), xz) <= opt.gap_tol) {
      sol.status = SdpStatus::optimal;
      break;
    }
    double x_trace = 0.0;
    for (const auto& xj : x) x_trace += real_part<Scalar>(xj.trace());
    if (y.norm() > 1e12 || x_trace > 1e12) {
      sol.status = SdpStatus::infeasible;
      break;
    }
    if (iter >= opt.max_iters) {
      sol.status = SdpStatus::max_iterations;
      break;
    }

    const double mu = xz / n_total;
    std::vector<Eigen::LLT<Dense>> x_chol(nb), z_chol(nb);
    std::vector<Dense> w(nb), z_inv(nb);
    Eigen::MatrixXd schur = Eigen::MatrixXd::Zero(m, m);
    bool broken = false;
    for (std::size_t j = 0; j < nb && !broken; ++j) {
      x_chol[j].compute(x[j]);
      z_chol[j].compute(z[j]);
      if (x_chol[j].info() != Eigen::Success || z_chol[j].info() != Eigen::Success) {
        broken = true;
        break;
      }
      const Dense lx = x_chol[j].matrixL();
      const Dense lz = z_chol[j].matrixL();
      Eigen::JacobiSVD<Dense> svd(lz.adjoint() * lx, Eigen::ComputeFullU | Eigen::ComputeFullV);
      const Dense g = lx * svd.matrixV();
      Eigen::VectorXd inv_s = svd.singularValues().cwiseInverse();
      w[j] = hermitize<Scalar>(g * inv_s.asDiagonal() * g.adjoint());
      z_inv[j] = z_chol[j].solve(Dense::Identity(p.blocks[j].dim, p.blocks[j].dim));

      const auto& terms = p.blocks[j].terms;
      for (std::size_t s = 0; s < terms.size(); ++s) {
        const Dense gk = w[j] * (terms[s].second * w[j]);
        for (std::size_t t = s; t < terms.size(); ++t) {
          const double v = inner<Scalar>(terms[t].second, gk);
          schur(terms[s].first, terms[t].first) += v;
          if (t != s) schur(terms[t].first, terms[s].first) += v;
        }
      }
    }
    if (broken) {
      sol.status = SdpStatus::max_iterations;
      break;
    }
    Eigen::LDLT<Eigen::MatrixXd> ldlt(schur);
    if (ldlt.info() != Eigen::Success) {
      schur.diagonal().array() += 1e-14 * (1.0 + schur.diagonal().cwiseAbs().maxCoeff());
      ldlt.compute(schur);
    }

    auto direction = [&](double target, Eigen::VectorXd& dy, std::vector<Dense>& dx,
                         std::vector<Dense>& dz) {
      std::vector<Dense> rc(nb);
      std::vector<Dense> tmp(nb);
      for (std::size_t j = 0; j < nb; ++j) {
        rc[j] = target * z_inv[j] - x[j];
        tmp[j] = rc[j] - w[j] * rd[j] * w[j];
      }
      dy = ldlt.solve(rp - apply_a(tmp));
      dx.resize(nb);
      dz.resize(nb);
      for (std::size_t j = 0; j < nb; ++j) {
        dz[j] = hermitize<Scalar>(rd[j] - apply_at(dy, j));
        dx[j] = hermitize<Scalar>(rc[j] - w[j] * dz[j] * w[j]);
      }
    };
    auto step_lengths = [&](const std::vector<Dense>& dx, const std::vector<Dense>& dz) {
      double ap = std::numeric_limits<double>::infinity(), ad = ap;
      for (std::size_t j = 0; j < nb; ++j) {
        ap = std::min(ap, max_step<Scalar>(x_chol[j], dx[j]));
        ad = std::min(ad, max_step<Scalar>(z_chol[j], dz[j]));
      }
      return std::pair<double, double>(ap, ad);
    };

    Eigen::VectorXd dy;
    std::vector<Dense> dx, dz;
    direction(0.0, dy, dx, dz);
    auto [ap_aff, ad_aff] = step_lengths(dx, dz);
    ap_aff = std::min(1.0, ap_aff);
    ad_aff = std::min(1.0, ad_aff);
    double xz_aff = 0.0;
    for (std::size_t j = 0; j < nb; ++j)
      xz_aff += inner<Scalar>(Dense(x[j] + ap_aff * dx[j]), Dense(z[j] + ad_aff * dz[j]));
    const double ratio = std::clamp(xz_aff / std::max(xz, 1e-300), 0.0, 1.0);
    const double sigma = std::max(ratio * ratio * ratio, 1e-4);

    direction(sigma * mu, dy, dx, dz);
    auto [ap, ad] = step_lengths(dx, dz);
    ap = std::min(1.0, opt.step_factor * ap);
    ad = std::min(1.0, opt.step_factor * ad);
    for (std::size_t j = 0; j < nb; ++j) {
      x[j] = hermitize<Scalar>(x[j] + ap * dx[j]);
      z[j] = hermitize<Scalar>(z[j] + ad * dz[j]);
    }
    y += ad * dy;
  }
  sol.y = y;
  sol.x = std::move(x);
  sol.z = std::move(z);
  return sol;
}

}  // namespace detail

template <typename Scalar>
void SdpProblem<Scalar>::validate() const {
  if (num_vars < 0 || b.size() != num_vars) throw std::invalid_argument("b must have num_vars entries");
  for (const auto& blk : blocks) {
    if (blk.dim <= 0 || blk.c.rows() != blk.dim || blk.c.cols() != blk.dim)
      throw std::invalid_argument("block C has wrong shape");
    if ((blk.c - blk.c.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
      throw std::invalid_argument("block C is not Hermitian");
    for (const auto& [k, a] : blk.terms) {
      if (k < 0 || k >= num_vars) throw std::invalid_argument("constraint references undeclared variable");
      if (a.rows() != blk.dim || a.cols() != blk.dim) throw std::invalid_argument("block A has wrong shape");
      const SparseMatrix<Scalar> adj = a.adjoint();
      if ((a - adj).norm() > 1e-12) throw std::invalid_argument("block A is not Hermitian");
    }
  }
}

/// Solves the pair; returns full-size X and Z blocks. A start point must be strictly
/// feasible (X > 0 with A(X) = b, C - A^T y > 0) or it is ignored.
template <typename Scalar>
SdpSolution<Scalar> solve(const SdpProblem<Scalar>& problem, const SolverOptions& opt = {},
                          const StartPoint<Scalar>* start = nullptr) {
  using Dense = DenseMatrix<Scalar>;
  problem.validate();
  if (!(opt.gap_tol > 0) || !(opt.feas_tol > 0) || opt.max_iters < 0)
    throw std::invalid_argument("solver tolerances must be positive");

  const auto comps = detail::split_components(problem);
  SdpProblem<Scalar> split;
  split.num_vars = problem.num_vars;
  split.b = problem.b;
  split.offset = problem.offset;
  for (const auto& comp : comps) {
    const auto& blk = problem.blocks[comp.block];
    SdpBlock<Scalar> sub;
    sub.dim = static_cast<int>(comp.indices.size());
    sub.c = detail::restrict_dense<Scalar>(blk.c, comp.indices);
    for (const auto& [k, a] : blk.terms) {
      SparseMatrix<Scalar> r = detail::restrict_sparse<Scalar>(a, comp.indices, blk.dim);
      if (r.nonZeros() > 0) sub.terms.emplace_back(k, std::move(r));
    }
    split.blocks.push_back(std::move(sub));
  }
  StartPoint<Scalar> split_start;
  const StartPoint<Scalar>* sp = nullptr;
  if (start != nullptr && start->x.size() == problem.blocks.size()) {
    split_start.y = start->y;
    for (const auto& comp : comps)
      split_start.x.push_back(detail::restrict_dense<Scalar>(start->x[comp.block], comp.indices));
    sp = &split_start;
  }

  auto raw = detail::solve_split(split, opt, sp);
  SdpSolution<Scalar> sol = raw;
  sol.num_components = comps.size();
  sol.x.assign(problem.blocks.size(), Dense());
  sol.z.assign(problem.blocks.size(), Dense());
  for (std::size_t j = 0; j < problem.blocks.size(); ++j) {
    const int d = problem.blocks[j].dim;
    sol.x[j] = Dense::Zero(d, d);
    sol.z[j] = problem.blocks[j].c;
    for (const auto& [k, a] : problem.blocks[j].terms) sol.z[j] -= sol.y(k) * Dense(a);
  }
  for (std::size_t i = 0; i < comps.size(); ++i) {
    const auto& idx = comps[i].indices;
    for (std::size_t r = 0; r < idx.size(); ++r)
      for (std::size_t c = 0; c < idx.size(); ++c) sol.x[comps[i].block](idx[r], idx[c]) = raw.x[i](r, c);
  }
  return sol;
}

}  // namespace pptlab::sdp
