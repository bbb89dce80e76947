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

// Optimal discrimination by PPT POVMs as an SDP, its certificate, and the
// instances used by the experiments.

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "pptlab/commutant.hpp"
#include "pptlab/linalg.hpp"
#include "pptlab/sdp_solver.hpp"
#include "pptlab/states.hpp"

namespace pptlab {

struct DiscriminationInstance {
  std::vector<StateVector> states;
  std::vector<double> priors;
  /// Local monomial unitaries fixing every state up to a phase. Optional; they
  /// only shrink the search space to the invariant operators.
  std::vector<ComplexMatrix> symmetries;

  static DiscriminationInstance uniform(std::vector<StateVector> states,
                                        std::vector<ComplexMatrix> symmetries = {});
  /// Throws ContractViolation on mismatched dimensions, bad priors or invalid symmetries.
  void validate() const;
  Eigen::Index dim() const { return states.front().dim(); }
  Eigen::Index dim_a() const;
  Eigen::Index dim_b() const;
};

/// SDP for max sum_i p_i Tr(E_i rho_i) over PPT POVMs. Blocks 2i and 2i+1 hold E_i
/// and E_i^Gamma; the last element is I minus the others.
struct PptProblem {
  sdp::SdpProblem<cplx> sdp;
  std::vector<SparseComplex> basis;
  int outcomes = 0;
  Eigen::Index dim_a = 0;
  Eigen::Index dim_b = 0;
  std::vector<ComplexMatrix> weighted_states;  // p_i rho_i
  sdp::StartPoint<cplx> start;                 // E_i = I/n and a strictly feasible certificate

  std::vector<ComplexMatrix> povm(const Eigen::VectorXd& y) const;
};

PptProblem build_ppt_discrimination(const DiscriminationInstance& instance);

/// Tr Y bounds the success of every PPT POVM when Y - p_i rho_i - Q_i^Gamma >= 0 and Q_i >= 0.
struct DualCertificate {
  ComplexMatrix y;
  std::vector<ComplexMatrix> q;
};

struct CertificateCheck {
  double trace_y = 0.0;
  std::vector<double> r_min_eigenvalues;
  std::vector<double> q_min_eigenvalues;
  /// max_i of the eigenvalue shortfalls; the bound absorbs them via Y + slack*I.
  double slack = 0.0;
  double bound = 0.0;
};

DualCertificate extract_certificate(const PptProblem& problem, const sdp::SdpSolution<cplx>& solution);
/// Uses only the instance and the certificate, not the solver state.
CertificateCheck verify_certificate(const DiscriminationInstance& instance, const DualCertificate& cert);

struct PptResult {
  sdp::SdpStatus status = sdp::SdpStatus::max_iterations;
  int iterations = 0;
  int num_vars = 0;
  std::size_t num_components = 0;
  double value = 0.0;       // attained by the returned POVM
  double dual_value = 0.0;  // solver certificate value
  double duality_gap = 0.0;
  double certified_bound = 0.0;  // independently verified upper bound
  CertificateCheck check;
  DualCertificate certificate;
  std::vector<ComplexMatrix> povm;
  double completeness_residual = 0.0;
  double min_eigenvalue = 0.0;     // over all E_i
  double min_pt_eigenvalue = 0.0;  // over all E_i^Gamma
  std::vector<double> gap_history;
};

PptResult optimal_ppt_success(const DiscriminationInstance& instance, const sdp::SolverOptions& options = {});

/// Success of a POVM on the instance.
double success_probability(const DiscriminationInstance& instance, const std::vector<ComplexMatrix>& povm);

struct TraceBoundReport {
  int d = 0;
  double psd_residual = 0.0;
  double ppt_residual = 0.0;
  double fix_residual = 0.0;
  double trace = 0.0;
  bool applicable = false;
  bool passes = false;
};

/// For E >= 0, E^Gamma >= 0 with E Phi = Phi on d x d: Tr E >= d.
TraceBoundReport trace_bound_check(const BipartiteOperator& e, int d, double tol = kTolerances.psd);

struct ThresholdPoint {
  double lambda0 = 0.0;
  PptResult result;
};

struct ThresholdSweep {
  std::vector<ThresholdPoint> points;
  /// Largest grid value with p* = 1 (all smaller ones too) and smallest with p* < 1 - margin.
  double last_perfect = 0.0;
  double first_imperfect = 1.0;
  bool bracketed = false;
};

ThresholdSweep threshold_sweep(const std::vector<double>& grid, const sdp::SolverOptions& options = {},
                               double perfect_tol = 1e-5, double margin = 1e-3);

// Instances.

/// The four chi states, uniform priors, with their symmetry generators.
DiscriminationInstance chi_instance();
/// chi_i (x) (sqrt(1-p)|00> + sqrt(p)|11>) on three qubit pairs, uniform priors.
DiscriminationInstance chi_two_term_instance(double p);
/// Psi_i (x) (sqrt(l0)|00> + sqrt(1-l0)|11>) for i = 1..3, uniform priors.
DiscriminationInstance threshold_instance(double lambda0);

/// n of the d^2 states (I (x) X^a Z^b)|Phi>, chosen at random, under a random local unitary.
std::vector<StateVector> random_orthogonal_max_entangled(int d, int n, std::mt19937_64& rng);
/// Random E with E >= 0, E^Gamma >= 0 and E Phi = Phi on d x d.
BipartiteOperator random_ppt_fixing_phi(int d, std::mt19937_64& rng);
ComplexMatrix random_unitary(int n, std::mt19937_64& rng);

}  // namespace pptlab
