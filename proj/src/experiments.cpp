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

#include "pptlab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <fstream>
#include <random>
#include <sstream>

#include "pptlab/analytic.hpp"
#include "pptlab/bell_diagonal.hpp"
#include "pptlab/discrimination.hpp"
#include "pptlab/protocols.hpp"

namespace pptlab {

namespace {

constexpr double kMargin = 1e-3;
constexpr double kPerfectTol = 1e-5;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

bool optimal(const PptResult& r) { return r.status == sdp::SdpStatus::optimal; }

Json solver_json(const sdp::SolverOptions& o) {
  return {{"gap_tol", o.gap_tol}, {"feas_tol", o.feas_tol}, {"max_iters", o.max_iters}};
}

std::vector<double> default_threshold_grid() {
  std::vector<double> g;
  for (int k = 0; k <= 6; ++k) g.push_back(0.5 + 0.05 * k);
  g.push_back(2.0 / 3.0);
  std::sort(g.begin(), g.end());
  return g;
}

// ---------------------------------------------------------------------------

Report theorem1(const ExperimentConfig& c) {
  Report rep;
  rep.experiment = "theorem1";
  rep.parameters = {{"samples", c.samples}, {"seed", c.seed}, {"solver", solver_json(c.solver)}};

  std::vector<StateVector> bell;
  for (int i = 0; i < 4; ++i) bell.push_back(bell_state(PauliIndex(i)));
  const ComplexMatrix id4 = ComplexMatrix::Identity(4, 4);
  const ComplexMatrix three = bell[0].projector().matrix + bell[1].projector().matrix + bell[2].projector().matrix;
  const auto ex_id = trace_bound_check({id4, {2, 2}, 1}, 2);
  const auto ex_three = trace_bound_check({three, {2, 2}, 1}, 2);
  const auto ex_one = trace_bound_check(bell[0].projector(), 2);
  rep.add("E = I on 2x2 satisfies Tr E >= 2", ex_id.passes, "trace " + fmt(ex_id.trace));
  rep.add("E = Psi0+Psi1+Psi2 satisfies Tr E >= 2", ex_three.passes, "trace " + fmt(ex_three.trace));
  rep.add("E = Psi0 is outside the preconditions", !ex_one.applicable,
          "PT residual " + fmt(ex_one.ppt_residual));
  rep.certificates["examples"] = {to_json(ex_id), to_json(ex_three), to_json(ex_one)};

  std::mt19937_64 rng(c.seed);
  Json random_stats = Json::array();
  for (int d : {2, 3, 4}) {
    int applicable = 0, passed = 0;
    double min_margin = std::numeric_limits<double>::infinity();
    for (int s = 0; s < c.samples; ++s) {
      const auto r = trace_bound_check(random_ppt_fixing_phi(d, rng), d);
      applicable += r.applicable;
      passed += r.passes;
      min_margin = std::min(min_margin, r.trace - d);
    }
    random_stats.push_back({{"d", d}, {"samples", c.samples}, {"applicable", applicable}, {"passed", passed},
                            {"min_trace_minus_d", min_margin}});
    rep.add("trace bound on random PPT operators fixing Phi, d=" + std::to_string(d),
            applicable == c.samples && passed == c.samples,
            std::to_string(passed) + "/" + std::to_string(c.samples) + ", min Tr E - d = " + fmt(min_margin));
  }
  rep.certificates["random_operators"] = random_stats;

  Json sdps = Json::array();
  for (int d : {2, 3}) {
    const auto states = random_orthogonal_max_entangled(d, d + 1, rng);
    const auto r = optimal_ppt_success(DiscriminationInstance::uniform(states), c.solver);
    rep.converged = rep.converged && optimal(r);
    sdps.push_back({{"d", d}, {"states", d + 1}, {"result", to_json(r)}});
    rep.add("p* < 1 - 1e-3 for " + std::to_string(d + 1) + " orthogonal maximally entangled states in " +
                std::to_string(d) + "x" + std::to_string(d),
            optimal(r) && r.certified_bound < 1.0 - kMargin, "certified bound " + fmt(r.certified_bound));
  }
  rep.certificates["sdp"] = sdps;
  return rep;
}

Report theorem2(const ExperimentConfig& c) {
  Report rep;
  rep.experiment = "theorem2";
  rep.parameters = {{"method", c.method}};
  if (c.method == "analytic") {
    const auto trace = analytic::analytic_infeasibility();
    rep.certificates["proof_trace"] = to_json(trace);
    for (const auto& s : trace.steps) rep.add(s.claim, s.verdict);
    const auto& f = trace.forced;
    using analytic::Rational;
    rep.add("forced a1 = 1/2, a0 = a2 = 1/6",
            f.a1 == Rational(1, 2) && f.a0 == Rational(1, 6) && f.a2 == Rational(1, 6));
    rep.add("terminal violation 4/3 > 1", trace.contradiction(),
            "terminal eigenvalue " + analytic::to_string(trace.terminal_eigenvalue));
    return rep;
  }
  rep.parameters["solver"] = solver_json(c.solver);
  auto inst = chi_instance();
  if (!c.priors.empty()) inst.priors = c.priors;
  rep.parameters["priors"] = inst.priors;
  const auto r = optimal_ppt_success(inst, c.solver);
  rep.converged = optimal(r);
  rep.certificates["sdp"] = to_json(r, true);
  rep.add("solver status optimal", optimal(r), sdp::to_string(r.status));
  rep.add("duality gap <= tolerance", r.duality_gap <= c.solver.gap_tol, fmt(r.duality_gap));
  rep.add("dual certificate verified independently: p* <= " + fmt(r.certified_bound),
          r.certified_bound <= 1.0 - kMargin, "slack " + fmt(r.check.slack));
  rep.add("PPT POVM valid (completeness and eigenvalues >= -1e-7)",
          r.completeness_residual <= 1e-7 && r.min_eigenvalue >= -1e-7 && r.min_pt_eigenvalue >= -1e-7);
  rep.parameters["value"] = r.value;
  return rep;
}

Report catalysis(const ExperimentConfig& c) {
  Report rep;
  rep.experiment = "catalysis";
  std::vector<int> inputs = {0, 1, 2, 3};
  if (c.input) inputs = {*c.input};
  rep.parameters = {{"inputs", inputs}};
  const auto& corr = teleport_corrections();
  rep.certificates["teleport_corrections"] = std::vector<int>(corr.begin(), corr.end());
  Json trees = Json::array();
  for (int i : inputs) {
    const auto t = catalysis_discriminate(i);
    trees.push_back(to_json(t));
    bool quarter = t.leaves.size() == 4;
    for (const auto& l : t.leaves) quarter = quarter && std::abs(l.probability - 0.25) <= 1e-12;
    const std::string tag = " (input " + std::to_string(i) + ")";
    rep.add("4 teleportation branches of probability 1/4" + tag, quarter);
    rep.add("every leaf classifies " + std::to_string(i) + tag, t.zero_error());
    rep.add("probability conserved" + tag,
            std::abs(t.leaf_probability_sum() - 1.0) <= 1e-12 && t.max_node_defect() <= 1e-12);
    rep.add("residual fidelity to Psi_0 is 1" + tag, t.min_residual_fidelity() >= 1.0 - 1e-10,
            fmt(t.min_residual_fidelity()));
  }
  rep.branches = trees;
  return rep;
}

Report tensor_power(const ExperimentConfig& c) {
  Report rep;
  rep.experiment = "tensor-power";
  const double delta = c.delta.value_or(0.3);
  const int m = min_copies(delta);
  rep.parameters = {{"delta", delta}, {"min_copies", m}};
  if (m > 4) throw UsageError("exhaustive enumeration over 4^m messages is limited to m <= 4");
  rep.add("min_copies equals the least m passing the majorization test", min_copies_by_majorization(delta) == m,
          "m = " + std::to_string(m));
  int grid_ok = 0;
  for (int k = 1; k <= 50; ++k) grid_ok += min_copies(0.5 * k / 50) == min_copies_by_majorization(0.5 * k / 50);
  rep.add("min_copies agrees with majorization on 50 grid values of delta", grid_ok == 50,
          std::to_string(grid_ok) + "/50");

  long total = 1;
  for (int s = 0; s < m; ++s) total *= 4;
  long decoded = 0, leaves = 0;
  double min_fid = 1.0;
  Json summary = Json::array();
  std::vector<int> msg(m);
  for (long code = 0; code < total; ++code) {
    long x = code;
    for (int s = m - 1; s >= 0; --s, x /= 4) msg[s] = static_cast<int>(x % 4);
    const auto t = multi_copy_protocol(msg, delta);
    leaves += static_cast<long>(t.leaves.size());
    decoded += t.zero_error();
    min_fid = std::min(min_fid, t.min_residual_fidelity());
    summary.push_back({{"input", msg}, {"leaves", t.leaves.size()}, {"zero_error", t.zero_error()}});
  }
  rep.branches = summary;
  rep.add("all " + std::to_string(total) + " messages decoded with zero error", decoded == total,
          std::to_string(leaves) + " leaves enumerated");
  rep.add("a Psi_0 remains at every leaf", min_fid >= 1.0 - 1e-10, fmt(min_fid));
  return rep;
}

Report channel(const ExperimentConfig& c) {
  Report rep;
  rep.experiment = "channel";
  const ChannelSpec spec{c.delta.value_or(0.3)};
  spec.validate();
  const int m = min_copies(spec.delta);
  std::vector<int> shots = {1, m};
  if (c.shots) shots = {*c.shots};
  if (m > 4) throw UsageError("exhaustive enumeration over 4^m messages is limited to m <= 4");
  rep.parameters = {{"delta", spec.delta}, {"shots", shots}, {"min_copies", m}, {"solver", solver_json(c.solver)}};
  Json runs = Json::array();
  for (int s : shots) {
    const auto r = channel_experiment(spec, s, c.solver, kMargin);
    runs.push_back(to_json(r));
    if (r.one_shot) {
      rep.converged = rep.converged && optimal(*r.one_shot);
      rep.add("one-shot p* < 1 (certified), so fewer than 2 bits zero-error", r.one_shot_below_two_bits,
              "certified bound " + fmt(r.one_shot->certified_bound) + ", attained " + fmt(r.one_shot->value));
    }
    if (r.multi_shot_applicable) {
      rep.add(std::to_string(s) + " shots: all " + std::to_string(r.messages_total) + " messages decoded exactly",
              r.zero_error, fmt(r.bits) + " bits");
    } else if (s > 1) {
      rep.add(std::to_string(s) + " shots: multi-shot protocol applicable", false,
              "needs at least " + std::to_string(m) + " shots");
    }
  }
  rep.certificates["runs"] = runs;
  return rep;
}

Report threshold(const ExperimentConfig& c) {
  Report rep;
  rep.experiment = "threshold";
  const auto grid = c.grid.empty() ? default_threshold_grid() : c.grid;
  const auto sweep = threshold_sweep(grid, c.solver, kPerfectTol, kMargin);
  rep.parameters = {{"grid", grid}, {"solver", solver_json(c.solver)}};
  rep.certificates["sweep"] = to_json(sweep);
  for (const auto& p : sweep.points) {
    rep.converged = rep.converged && optimal(p.result);
    const std::string l = fmt(p.lambda0);
    if (p.lambda0 <= 2.0 / 3.0 + 1e-12) {
      rep.add("lambda0 = " + l + ": p* = 1", std::abs(p.result.value - 1.0) <= kPerfectTol,
              "p* " + fmt(p.result.value));
    } else if (p.lambda0 >= 0.70 - 1e-12) {
      rep.add("lambda0 = " + l + ": p* < 1 - 1e-3 (certified)", p.result.certified_bound < 1.0 - kMargin,
              "bound " + fmt(p.result.certified_bound));
    }
  }
  rep.add("crossing bracketed", sweep.bracketed,
          "[" + fmt(sweep.last_perfect) + ", " + fmt(sweep.first_imperfect) + "]");
  return rep;
}

Report sdp_solve(const ExperimentConfig& c) {
  Report rep;
  rep.experiment = "sdp-solve";
  rep.parameters = {{"solver", solver_json(c.solver)}};
  if (!c.input_path.empty()) {
    std::ifstream in(c.input_path);
    if (!in) throw IoError("cannot read problem file " + c.input_path);
    Json j;
    try {
      j = Json::parse(in);
    } catch (const Json::exception& e) {
      throw IoError("malformed problem file " + c.input_path + ": " + e.what());
    }
    const auto problem = sdp_problem_from_json(j);
    const auto sol = sdp::solve(problem, c.solver);
    rep.parameters["input"] = c.input_path;
    rep.converged = sol.status == sdp::SdpStatus::optimal;
    rep.certificates["solution"] = to_json(sol, true);
    rep.add("solver status optimal", rep.converged, sdp::to_string(sol.status));
    rep.add("duality gap <= tolerance", sol.duality_gap <= c.solver.gap_tol, fmt(sol.duality_gap));
    return rep;
  }
  if (c.epsilon) {
    const double eps = *c.epsilon;
    const auto q_res = optimal_ppt_success(chi_instance(), c.solver);
    const double q = q_res.certified_bound;
    const auto lb = lemma_perturbation_bound(q, eps);
    const auto r = optimal_ppt_success(chi_two_term_instance(eps), c.solver);
    rep.converged = optimal(q_res) && optimal(r);
    rep.parameters["epsilon"] = eps;
    rep.parameters["q"] = q;
    rep.certificates["lemma"] = {{"bound", lb.bound}, {"indistinguishable", lb.indistinguishable}};
    rep.certificates["sdp"] = to_json(r);
    rep.add("epsilon < (1 - q)^2", lb.indistinguishable, "(1-q)^2 = " + fmt((1 - q) * (1 - q)));
    rep.add("p* <= q + sqrt(epsilon) + 1e-6", r.value <= lb.bound + 1e-6,
            "p* " + fmt(r.value) + ", bound " + fmt(lb.bound));
    rep.add("p* < 1 - 1e-4 (certified)", r.certified_bound < 1.0 - 1e-4, fmt(r.certified_bound));
    return rep;
  }
  // Built-in example: max Tr(E Psi_0) over 0 <= E <= I.
  const auto psi0 = bell_state(PauliIndex(0));
  const auto basis = invariant_hermitian_basis(4, {});
  sdp::SdpProblem<cplx> p;
  p.num_vars = static_cast<int>(basis.size());
  p.b.resize(p.num_vars);
  sdp::SdpBlock<cplx> lower{4, ComplexMatrix::Zero(4, 4), {}}, upper{4, ComplexMatrix::Identity(4, 4), {}};
  const ComplexMatrix proj = psi0.projector().matrix;
  for (int k = 0; k < p.num_vars; ++k) {
    p.b(k) = ComplexMatrix(basis[k]).cwiseProduct(proj.conjugate()).sum().real();
    lower.terms.emplace_back(k, -basis[k]);
    upper.terms.emplace_back(k, basis[k]);
  }
  p.blocks = {lower, upper};
  const auto sol = sdp::solve(p, c.solver);
  rep.converged = sol.status == sdp::SdpStatus::optimal;
  rep.parameters["problem"] = "max Tr(E Psi_0) s.t. 0 <= E <= I";
  rep.certificates["solution"] = to_json(sol, false);
  rep.add("value 1", std::abs(sol.primal_value - 1.0) <= 1e-6, fmt(sol.primal_value));
  return rep;
}

}  // namespace

void ExperimentConfig::validate() const {
  bool known = false;
  for (const auto& e : list_experiments()) known = known || e.name == name;
  if (!known) throw UsageError("unknown experiment '" + name + "'");
  if (format != "json" && format != "table") throw UsageError("format must be json or table");
  if (method != "sdp" && method != "analytic") throw UsageError("method must be sdp or analytic");
  if (!(solver.gap_tol > 0) || !(solver.feas_tol > 0) || solver.max_iters < 1)
    throw UsageError("solver tolerances must be positive");
  if (delta && !(*delta > 0.0 && *delta < 0.5)) throw UsageError("delta must lie in (0, 1/2)");
  if (epsilon && !(*epsilon >= 0.0 && *epsilon <= 1.0)) throw UsageError("epsilon must lie in [0, 1]");
  for (double g : grid)
    if (!(g >= 0.5 && g <= 1.0)) throw UsageError("grid values must lie in [1/2, 1]");
  if (input && (*input < 0 || *input > 3)) throw UsageError("input must be in 0..3");
  if (shots && *shots < 1) throw UsageError("shots must be >= 1");
  if (samples < 1) throw UsageError("samples must be >= 1");
  if (!priors.empty()) {
    if (priors.size() != 4) throw UsageError("priors need 4 entries");
    double s = 0.0;
    for (double p : priors) {
      if (!(p >= 0.0)) throw UsageError("priors must be nonnegative");
      s += p;
    }
    if (std::abs(s - 1.0) > 1e-12) throw UsageError("priors must sum to 1");
  }
}

const std::vector<ExperimentInfo>& list_experiments() {
  static const std::vector<ExperimentInfo> registry = {
      {"theorem1", "Theorem 1", "trace bound Tr E >= d and p* < 1 for d+1 maximally entangled states in d x d"},
      {"theorem2", "Theorem 2", "the four chi states are not PPT-distinguishable (SDP certificate or exact proof)"},
      {"catalysis", "catalysis paragraph", "teleportation discrimination of chi_i with a returned Psi_0"},
      {"tensor-power", "Theorem 3", "S^m (x) beta^m decoded with zero error by a two-step local protocol"},
      {"channel", "channel construction", "one-shot PPT bound and multi-shot zero-error decoding"},
      {"threshold", "Theorem 4", "p* for {Psi_i (x) alpha} is 1 iff lambda0 <= 2/3"},
      {"sdp-solve", "Lemma", "solve an SDP file, the Lemma instance (--epsilon) or a built-in example"},
  };
  return registry;
}

Report run(const ExperimentConfig& config) {
  config.validate();
  Report rep;
  if (config.name == "theorem1") rep = theorem1(config);
  else if (config.name == "theorem2") rep = theorem2(config);
  else if (config.name == "catalysis") rep = catalysis(config);
  else if (config.name == "tensor-power") rep = tensor_power(config);
  else if (config.name == "channel") rep = channel(config);
  else if (config.name == "threshold") rep = threshold(config);
  else rep = sdp_solve(config);
  return rep;
}

std::string render(const Report& report, const std::string& format) {
  if (format == "table") return report.to_table();
  return report.to_json().dump(2) + "\n";
}

}  // namespace pptlab
