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

#include "pptlab/discrimination.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

namespace pptlab {

namespace {

Eigen::Index factor_product(const std::vector<int>& dims, std::size_t lo, std::size_t hi) {
  Eigen::Index p = 1;
  for (std::size_t i = lo; i < hi; ++i) p *= dims[i];
  return p;
}

double inner_re(const SparseComplex& a, const ComplexMatrix& b) {
  double s = 0.0;
  for (int col = 0; col < a.outerSize(); ++col)
    for (SparseComplex::InnerIterator it(a, col); it; ++it)
      s += (std::conj(it.value()) * b(it.row(), it.col())).real();
  return s;
}

SparseComplex to_sparse(const ComplexMatrix& m) {
  std::vector<Eigen::Triplet<cplx>> trips;
  for (Eigen::Index c = 0; c < m.cols(); ++c)
    for (Eigen::Index r = 0; r < m.rows(); ++r)
      if (std::abs(m(r, c)) > 1e-15) trips.emplace_back(static_cast<int>(r), static_cast<int>(c), m(r, c));
  SparseComplex s(m.rows(), m.cols());
  s.setFromTriplets(trips.begin(), trips.end());
  return s;
}

ComplexMatrix hermitize(const ComplexMatrix& m) { return (m + m.adjoint()) / 2.0; }

}  // namespace

// ---------------------------------------------------------------------------
// Instance

DiscriminationInstance DiscriminationInstance::uniform(std::vector<StateVector> states,
                                                       std::vector<ComplexMatrix> symmetries) {
  DiscriminationInstance inst;
  const double p = states.empty() ? 0.0 : 1.0 / static_cast<double>(states.size());
  inst.priors.assign(states.size(), p);
  inst.states = std::move(states);
  inst.symmetries = std::move(symmetries);
  return inst;
}

Eigen::Index DiscriminationInstance::dim_a() const {
  const auto& s = states.front();
  return factor_product(s.factor_dims, 0, s.cut);
}

Eigen::Index DiscriminationInstance::dim_b() const {
  const auto& s = states.front();
  return factor_product(s.factor_dims, s.cut, s.factor_dims.size());
}

void DiscriminationInstance::validate() const {
  if (states.empty()) throw ContractViolation("instance needs at least one state");
  if (priors.size() != states.size()) throw ContractViolation("one prior per state is required");
  double total = 0.0;
  for (double p : priors) {
    if (!(p >= 0.0)) throw ContractViolation("priors must be nonnegative");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-12) throw ContractViolation("priors must sum to 1");
  for (const auto& s : states) {
    if (s.dim() != dim() || s.factor_dims != states.front().factor_dims || s.cut != states.front().cut)
      throw ContractViolation("states live on different spaces");
    if (std::abs(s.amplitudes.norm() - 1.0) > kTolerances.normalization)
      throw ContractViolation("states must be unit vectors");
  }
  for (const auto& g : symmetries) {
    if (g.rows() != dim() || g.cols() != dim()) throw ContractViolation("symmetry dimension mismatch");
    if (!as_monomial(g)) throw ContractViolation("symmetry is not a monomial unitary");
    if (!is_local_product(g, dim_a(), dim_b())) throw ContractViolation("symmetry is not a local unitary");
    for (const auto& s : states)
      if (!phase_relation(g * s.amplitudes, s.amplitudes, 1e-10))
        throw ContractViolation("symmetry does not fix a state up to phase");
  }
}

// ---------------------------------------------------------------------------
// Builder

std::vector<ComplexMatrix> PptProblem::povm(const Eigen::VectorXd& y) const {
  const Eigen::Index d = dim_a * dim_b;
  const int k_count = static_cast<int>(basis.size());
  std::vector<ComplexMatrix> e(outcomes, ComplexMatrix::Zero(d, d));
  ComplexMatrix rest = ComplexMatrix::Identity(d, d);
  for (int i = 0; i + 1 < outcomes; ++i) {
    for (int k = 0; k < k_count; ++k) e[i] += y(i * k_count + k) * ComplexMatrix(basis[k]);
    rest -= e[i];
  }
  e[outcomes - 1] = rest;
  return e;
}

PptProblem build_ppt_discrimination(const DiscriminationInstance& instance) {
  instance.validate();
  PptProblem out;
  out.outcomes = static_cast<int>(instance.states.size());
  out.dim_a = instance.dim_a();
  out.dim_b = instance.dim_b();
  const int n = out.outcomes;
  const int d = static_cast<int>(instance.dim());
  const int last = n - 1;
  for (int i = 0; i < n; ++i)
    out.weighted_states.push_back(instance.priors[i] * projector(instance.states[i].amplitudes));

  out.basis = invariant_hermitian_basis(d, instance.symmetries);
  const int kc = static_cast<int>(out.basis.size());
  std::vector<SparseComplex> basis_pt;
  for (const auto& b : out.basis) basis_pt.push_back(to_sparse(partial_transpose(ComplexMatrix(b), out.dim_a, out.dim_b)));

  auto& p = out.sdp;
  p.num_vars = kc * (n - 1);
  p.b = Eigen::VectorXd::Zero(p.num_vars);
  p.offset = instance.priors[last];
  for (int i = 0; i < last; ++i) {
    const ComplexMatrix diff = out.weighted_states[i] - out.weighted_states[last];
    for (int k = 0; k < kc; ++k) p.b(i * kc + k) = inner_re(out.basis[k], diff);
  }
  const ComplexMatrix id = ComplexMatrix::Identity(d, d);
  for (int i = 0; i < n; ++i) {
    sdp::SdpBlock<cplx> e, g;
    e.dim = g.dim = d;
    if (i == last) {
      e.c = id;
      g.c = id;
      for (int j = 0; j < last; ++j)
        for (int k = 0; k < kc; ++k) {
          e.terms.emplace_back(j * kc + k, out.basis[k]);
          g.terms.emplace_back(j * kc + k, basis_pt[k]);
        }
    } else {
      e.c = ComplexMatrix::Zero(d, d);
      g.c = ComplexMatrix::Zero(d, d);
      for (int k = 0; k < kc; ++k) {
        e.terms.emplace_back(i * kc + k, -out.basis[k]);
        g.terms.emplace_back(i * kc + k, -basis_pt[k]);
      }
    }
    p.blocks.push_back(std::move(e));
    p.blocks.push_back(std::move(g));
  }

  // E_i = I/n; certificate Y = 2I, Q_i = I/2.
  out.start.y = Eigen::VectorXd::Zero(p.num_vars);
  for (int i = 0; i < last; ++i)
    for (int k = 0; k < kc; ++k) out.start.y(i * kc + k) = inner_re(out.basis[k], id / static_cast<double>(n));
  for (int i = 0; i < n; ++i) {
    out.start.x.push_back(1.5 * id - out.weighted_states[i]);
    out.start.x.push_back(0.5 * id);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Certificate

DualCertificate extract_certificate(const PptProblem& problem, const sdp::SdpSolution<cplx>& solution) {
  const int last = problem.outcomes - 1;
  DualCertificate cert;
  for (int i = 0; i < problem.outcomes; ++i) cert.q.push_back(hermitize(solution.x[2 * i + 1]));
  cert.y = hermitize(solution.x[2 * last] + problem.weighted_states[last] +
                     partial_transpose(cert.q[last], problem.dim_a, problem.dim_b));
  return cert;
}

CertificateCheck verify_certificate(const DiscriminationInstance& instance, const DualCertificate& cert) {
  instance.validate();
  const Eigen::Index d = instance.dim();
  if (cert.y.rows() != d || cert.q.size() != instance.states.size())
    throw ContractViolation("certificate does not match the instance");
  CertificateCheck check;
  check.trace_y = cert.y.trace().real();
  for (std::size_t i = 0; i < instance.states.size(); ++i) {
    const ComplexMatrix rho = instance.priors[i] * projector(instance.states[i].amplitudes);
    const ComplexMatrix r =
        hermitize(cert.y - rho - partial_transpose(hermitize(cert.q[i]), instance.dim_a(), instance.dim_b()));
    const double r_min = min_eigenvalue(r);
    const double q_min = min_eigenvalue(hermitize(cert.q[i]));
    check.r_min_eigenvalues.push_back(r_min);
    check.q_min_eigenvalues.push_back(q_min);
    check.slack = std::max(check.slack, std::max(0.0, -r_min) + std::max(0.0, -q_min));
  }
  check.bound = check.trace_y + static_cast<double>(d) * check.slack;
  return check;
}

// ---------------------------------------------------------------------------

double success_probability(const DiscriminationInstance& instance, const std::vector<ComplexMatrix>& povm) {
  double s = 0.0;
  for (std::size_t i = 0; i < instance.states.size(); ++i) {
    const auto& v = instance.states[i].amplitudes;
    s += instance.priors[i] * v.dot(povm[i] * v).real();
  }
  return s;
}

PptResult optimal_ppt_success(const DiscriminationInstance& instance, const sdp::SolverOptions& options) {
  const PptProblem problem = build_ppt_discrimination(instance);
  const auto sol = sdp::solve(problem.sdp, options, &problem.start);
  PptResult r;
  r.status = sol.status;
  r.iterations = sol.iterations;
  r.num_vars = problem.sdp.num_vars;
  r.num_components = sol.num_components;
  r.dual_value = sol.dual_value;
  r.duality_gap = sol.duality_gap;
  r.gap_history = sol.gap_history;
  r.povm = problem.povm(sol.y);
  r.value = success_probability(instance, r.povm);
  ComplexMatrix sum = ComplexMatrix::Zero(instance.dim(), instance.dim());
  r.min_eigenvalue = r.min_pt_eigenvalue = std::numeric_limits<double>::infinity();
  for (const auto& e : r.povm) {
    sum += e;
    r.min_eigenvalue = std::min(r.min_eigenvalue, min_eigenvalue(hermitize(e)));
    r.min_pt_eigenvalue = std::min(
        r.min_pt_eigenvalue, min_eigenvalue(hermitize(partial_transpose(e, problem.dim_a, problem.dim_b))));
  }
  r.completeness_residual = max_abs_diff(sum, ComplexMatrix::Identity(instance.dim(), instance.dim()));
  r.certificate = extract_certificate(problem, sol);
  r.check = verify_certificate(instance, r.certificate);
  r.certified_bound = r.check.bound;
  return r;
}

// ---------------------------------------------------------------------------

TraceBoundReport trace_bound_check(const BipartiteOperator& e, int d, double tol) {
  if (d < 1 || e.dim() != static_cast<Eigen::Index>(d) * d || e.dim_a() != d)
    throw ContractViolation("trace_bound_check expects an operator on d x d");
  TraceBoundReport rep;
  rep.d = d;
  const ComplexMatrix m = hermitize(e.matrix);
  const ComplexMatrix phi = projector(max_entangled(d).amplitudes);
  rep.psd_residual = std::max(0.0, -min_eigenvalue(m));
  rep.ppt_residual = std::max(0.0, -min_eigenvalue(hermitize(partial_transpose(m, d, d))));
  rep.fix_residual = max_abs_diff(m * phi, phi);
  rep.trace = m.trace().real();
  rep.applicable = rep.psd_residual <= tol && rep.ppt_residual <= tol && rep.fix_residual <= tol;
  rep.passes = rep.applicable && rep.trace >= d - tol;
  return rep;
}

ThresholdSweep threshold_sweep(const std::vector<double>& grid, const sdp::SolverOptions& options,
                               double perfect_tol, double margin) {
  ThresholdSweep sweep;
  std::vector<double> sorted = grid;
  std::sort(sorted.begin(), sorted.end());
  for (double l0 : sorted) {
    if (!(l0 >= 0.5 && l0 <= 1.0)) throw ContractViolation("lambda0 must lie in [1/2, 1]");
    sweep.points.push_back({l0, optimal_ppt_success(threshold_instance(l0), options)});
  }
  bool prefix_perfect = true;
  bool found_imperfect = false;
  for (const auto& pt : sweep.points) {
    const bool perfect = std::abs(pt.result.value - 1.0) <= perfect_tol && pt.result.certified_bound >= 1.0 - perfect_tol;
    const bool imperfect = pt.result.certified_bound < 1.0 - margin;
    if (perfect && prefix_perfect) sweep.last_perfect = pt.lambda0;
    if (!perfect) prefix_perfect = false;
    if (imperfect && !found_imperfect) {
      sweep.first_imperfect = pt.lambda0;
      found_imperfect = true;
    }
  }
  sweep.bracketed = found_imperfect && !sweep.points.empty() && sweep.last_perfect < sweep.first_imperfect &&
                    std::abs(sweep.points.front().result.value - 1.0) <= perfect_tol;
  return sweep;
}

// ---------------------------------------------------------------------------
// Instances

namespace {

ComplexMatrix pair_op(SymmetryKind kind, int pauli_index, int pair, int n_pairs, double theta = 0.0) {
  return on_pair(symmetry_unitary(kind, theta, pauli_index).matrix, pair, n_pairs);
}

std::vector<ComplexMatrix> chi_generators(int n_pairs) {
  std::vector<ComplexMatrix> g;
  for (int pair = 0; pair < 2; ++pair)
    for (int s = 1; s <= 2; ++s) g.push_back(pair_op(SymmetryKind::PauliPair, s, pair, n_pairs));
  g.push_back(pair_op(SymmetryKind::V, 0, 1, n_pairs, std::numbers::pi / 2));
  return g;
}

}  // namespace

DiscriminationInstance chi_instance() {
  std::vector<StateVector> s;
  for (int i = 0; i < 4; ++i) s.push_back(chi_state(i));
  return DiscriminationInstance::uniform(std::move(s), chi_generators(2));
}

DiscriminationInstance chi_two_term_instance(double p) {
  std::vector<StateVector> s;
  const StateVector extra = two_term_state(p);
  for (int i = 0; i < 4; ++i) s.push_back(append_pair(chi_state(i), extra));
  auto g = chi_generators(3);
  g.push_back(pair_op(SymmetryKind::U, 0, 2, 3));
  return DiscriminationInstance::uniform(std::move(s), std::move(g));
}

DiscriminationInstance threshold_instance(double lambda0) {
  if (!(lambda0 >= 0.0 && lambda0 <= 1.0)) throw ContractViolation("lambda0 must lie in [0, 1]");
  std::vector<StateVector> s;
  const StateVector extra = two_term_state(1.0 - lambda0);
  for (int i = 1; i <= 3; ++i) s.push_back(append_pair(bell_state(PauliIndex(i)), extra));
  std::vector<ComplexMatrix> g;
  for (int k = 1; k <= 2; ++k) g.push_back(pair_op(SymmetryKind::PauliPair, k, 0, 2));
  g.push_back(pair_op(SymmetryKind::U, 0, 1, 2));
  return DiscriminationInstance::uniform(std::move(s), std::move(g));
}

ComplexMatrix random_unitary(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  ComplexMatrix z(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) z(r, c) = cplx(g(rng), g(rng));
  Eigen::HouseholderQR<ComplexMatrix> qr(z);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix rr = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int c = 0; c < n; ++c) q.col(c) *= rr(c, c) / std::abs(rr(c, c));
  return q;
}

std::vector<StateVector> random_orthogonal_max_entangled(int d, int n, std::mt19937_64& rng) {
  if (d < 1 || n < 1 || n > d * d) throw ContractViolation("need 1 <= n <= d^2");
  std::vector<int> labels(d * d);
  std::iota(labels.begin(), labels.end(), 0);
  std::shuffle(labels.begin(), labels.end(), rng);
  ComplexMatrix shift = ComplexMatrix::Zero(d, d), clock = ComplexMatrix::Zero(d, d);
  for (int j = 0; j < d; ++j) {
    shift((j + 1) % d, j) = 1.0;
    clock(j, j) = std::polar(1.0, 2.0 * std::numbers::pi * j / d);
  }
  const ComplexMatrix local = kron(random_unitary(d, rng), random_unitary(d, rng));
  const ComplexVector phi = max_entangled(d).amplitudes;
  std::vector<StateVector> out;
  for (int t = 0; t < n; ++t) {
    const int a = labels[t] / d, b = labels[t] % d;
    ComplexMatrix w = ComplexMatrix::Identity(d, d);
    for (int s = 0; s < a; ++s) w = shift * w;
    for (int s = 0; s < b; ++s) w = w * clock;
    ComplexVector v = local * kron(ComplexMatrix::Identity(d, d), w) * phi;
    v.normalize();
    out.emplace_back(std::move(v), std::vector<int>{d, d}, 1);
  }
  return out;
}

BipartiteOperator random_ppt_fixing_phi(int d, std::mt19937_64& rng) {
  const int n = d * d;
  const ComplexMatrix phi = projector(max_entangled(d).amplitudes);
  const ComplexMatrix perp = ComplexMatrix::Identity(n, n) - phi;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::normal_distribution<double> g(0.0, 1.0);
  for (;;) {
    // c >= 1/(d+1) makes Phi + c(I - Phi) PPT; a random perturbation is kept when it stays PPT.
    const double c = 1.0 / (d + 1) + 2.0 * u(rng);
    ComplexMatrix h(n, n);
    for (int r = 0; r < n; ++r)
      for (int col = 0; col < n; ++col) h(r, col) = cplx(g(rng), g(rng));
    h = hermitize(h);
    h /= std::max(1e-12, h.norm());
    const double s = u(rng) * c;
    const ComplexMatrix e = hermitize(phi + perp * (c * ComplexMatrix::Identity(n, n) + s * h) * perp);
    if (min_eigenvalue(e) >= 0.0 && min_eigenvalue(hermitize(partial_transpose(e, d, d))) >= 0.0)
      return {e, {d, d}, 1};
  }
}

}  // namespace pptlab
