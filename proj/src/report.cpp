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

#include "pptlab/report.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>

namespace pptlab {

namespace {

Json complex_pair(cplx v) { return Json::array({v.real(), v.imag()}); }

cplx complex_from(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw ContractViolation("complex entry must be [re, im]");
  return {j.at(0).get<double>(), j.at(1).get<double>()};
}

Json sparse_entries(const SparseComplex& a) {
  Json out = Json::array();
  for (int col = 0; col < a.outerSize(); ++col)
    for (SparseComplex::InnerIterator it(a, col); it; ++it)
      out.push_back({it.row(), it.col(), it.value().real(), it.value().imag()});
  return out;
}

Json vector_json(const std::vector<double>& v) { return Json(v); }

}  // namespace

// ---------------------------------------------------------------------------

Json matrix_to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_pair(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json to_json(const BipartiteOperator& op) {
  return {{"dim", op.dim()}, {"entries", matrix_to_json(op.matrix)}, {"factor_dims", op.factor_dims}, {"cut", op.cut}};
}

ComplexMatrix matrix_from_json(const Json& j) {
  const Json& rows = j.is_object() ? j.at("entries") : j;
  const auto n = static_cast<Eigen::Index>(rows.size());
  ComplexMatrix m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    if (rows.at(r).size() != static_cast<std::size_t>(n)) throw ContractViolation("matrix must be square");
    for (Eigen::Index c = 0; c < n; ++c) m(r, c) = complex_from(rows.at(r).at(c));
  }
  if (j.is_object() && j.contains("dim") && j.at("dim").get<Eigen::Index>() != n)
    throw ContractViolation("dim does not match entries");
  return m;
}

BipartiteOperator operator_from_json(const Json& j) {
  ComplexMatrix m = matrix_from_json(j);
  std::vector<int> dims = j.contains("factor_dims") ? j.at("factor_dims").get<std::vector<int>>()
                                                    : std::vector<int>{static_cast<int>(m.rows())};
  const int cut = j.value("cut", 1);
  return {std::move(m), std::move(dims), cut};
}

Json to_json(const StateVector& s) {
  Json amps = Json::array();
  for (Eigen::Index i = 0; i < s.dim(); ++i) amps.push_back(complex_pair(s.amplitudes(i)));
  return {{"dim", s.dim()}, {"amplitudes", amps}, {"factor_dims", s.factor_dims}, {"cut", s.cut}};
}

StateVector state_from_json(const Json& j) {
  const Json& amps = j.at("amplitudes");
  ComplexVector v(static_cast<Eigen::Index>(amps.size()));
  for (std::size_t i = 0; i < amps.size(); ++i) v(static_cast<Eigen::Index>(i)) = complex_from(amps.at(i));
  return {std::move(v), j.at("factor_dims").get<std::vector<int>>(), j.value("cut", 1)};
}

Json to_json(const analytic::ProofTrace& trace) {
  using analytic::to_string;
  Json steps = Json::array();
  for (const auto& s : trace.steps) {
    Json inputs = Json::array();
    for (const auto& [k, v] : s.inputs) inputs.push_back({{"name", k}, {"value", v}});
    steps.push_back({{"claim", s.claim}, {"inputs", inputs}, {"verdict", s.verdict}});
  }
  const auto& f = trace.forced;
  return {{"steps", steps},
          {"forced",
           {{"a0", to_string(f.a0)}, {"a1", to_string(f.a1)}, {"a2", to_string(f.a2)},
            {"b0", to_string(f.b0)}, {"b1", to_string(f.b1)}, {"b2", to_string(f.b2)}}},
          {"hypotheses", trace.hypotheses.size()},
          {"terminal_eigenvalue", to_string(trace.terminal_eigenvalue)},
          {"all_verified", trace.all_verified()},
          {"contradiction", trace.contradiction()}};
}

// ---------------------------------------------------------------------------

Json to_json(const sdp::SdpProblem<cplx>& p) {
  Json blocks = Json::array();
  for (const auto& blk : p.blocks) {
    Json terms = Json::array();
    for (const auto& [k, a] : blk.terms) terms.push_back({{"var", k}, {"entries", sparse_entries(a)}});
    blocks.push_back({{"dim", blk.dim}, {"c", matrix_to_json(blk.c)}, {"terms", terms}});
  }
  return {{"num_vars", p.num_vars},
          {"b", std::vector<double>(p.b.data(), p.b.data() + p.b.size())},
          {"offset", p.offset},
          {"blocks", blocks}};
}

sdp::SdpProblem<cplx> sdp_problem_from_json(const Json& j) {
  sdp::SdpProblem<cplx> p;
  p.num_vars = j.at("num_vars").get<int>();
  const auto b = j.at("b").get<std::vector<double>>();
  p.b = Eigen::Map<const Eigen::VectorXd>(b.data(), static_cast<Eigen::Index>(b.size()));
  p.offset = j.value("offset", 0.0);
  for (const auto& jb : j.at("blocks")) {
    sdp::SdpBlock<cplx> blk;
    blk.dim = jb.at("dim").get<int>();
    blk.c = jb.contains("c") ? matrix_from_json(jb.at("c")) : ComplexMatrix::Zero(blk.dim, blk.dim);
    for (const auto& jt : jb.value("terms", Json::array())) {
      std::vector<Eigen::Triplet<cplx>> trips;
      for (const auto& e : jt.at("entries")) {
        const int r = e.at(0).get<int>(), c = e.at(1).get<int>();
        if (r < 0 || c < 0 || r >= blk.dim || c >= blk.dim) throw ContractViolation("entry outside block");
        trips.emplace_back(r, c, cplx(e.at(2).get<double>(), e.size() > 3 ? e.at(3).get<double>() : 0.0));
      }
      SparseComplex a(blk.dim, blk.dim);
      a.setFromTriplets(trips.begin(), trips.end());
      blk.terms.emplace_back(jt.at("var").get<int>(), std::move(a));
    }
    p.blocks.push_back(std::move(blk));
  }
  p.validate();
  return p;
}

Json to_json(const sdp::SdpSolution<cplx>& s, bool include_blocks) {
  Json j = {{"status", sdp::to_string(s.status)},
            {"iterations", s.iterations},
            {"primal_value", s.primal_value},
            {"dual_value", s.dual_value},
            {"duality_gap", s.duality_gap},
            {"primal_residual", s.primal_residual},
            {"dual_residual", s.dual_residual},
            {"components", s.num_components},
            {"y", std::vector<double>(s.y.data(), s.y.data() + s.y.size())}};
  if (include_blocks) {
    Json x = Json::array(), z = Json::array();
    for (const auto& m : s.x) x.push_back(matrix_to_json(m));
    for (const auto& m : s.z) z.push_back(matrix_to_json(m));
    j["x"] = x;
    j["z"] = z;
  }
  return j;
}

Json to_json(const PptResult& r, bool include_matrices) {
  Json j = {{"status", sdp::to_string(r.status)},
            {"iterations", r.iterations},
            {"num_vars", r.num_vars},
            {"components", r.num_components},
            {"value", r.value},
            {"dual_value", r.dual_value},
            {"duality_gap", r.duality_gap},
            {"certified_bound", r.certified_bound},
            {"completeness_residual", r.completeness_residual},
            {"min_eigenvalue", r.min_eigenvalue},
            {"min_pt_eigenvalue", r.min_pt_eigenvalue},
            {"certificate",
             {{"trace_y", r.check.trace_y},
              {"slack", r.check.slack},
              {"bound", r.check.bound},
              {"r_min_eigenvalues", vector_json(r.check.r_min_eigenvalues)},
              {"q_min_eigenvalues", vector_json(r.check.q_min_eigenvalues)}}}};
  if (include_matrices) {
    Json povm = Json::array(), q = Json::array();
    for (const auto& e : r.povm) povm.push_back(matrix_to_json(e));
    for (const auto& m : r.certificate.q) q.push_back(matrix_to_json(m));
    j["povm"] = povm;
    j["certificate"]["y"] = matrix_to_json(r.certificate.y);
    j["certificate"]["q"] = q;
  }
  return j;
}

Json to_json(const TraceBoundReport& r) {
  return {{"d", r.d},
          {"psd_residual", r.psd_residual},
          {"ppt_residual", r.ppt_residual},
          {"fix_residual", r.fix_residual},
          {"trace", r.trace},
          {"applicable", r.applicable},
          {"passes", r.passes}};
}

Json to_json(const ThresholdSweep& s) {
  Json pts = Json::array();
  for (const auto& p : s.points) pts.push_back({{"lambda0", p.lambda0}, {"result", to_json(p.result)}});
  return {{"points", pts},
          {"last_perfect", s.last_perfect},
          {"first_imperfect", s.first_imperfect},
          {"bracketed", s.bracketed}};
}

Json to_json(const BranchTree& t) {
  Json leaves = Json::array();
  for (const auto& l : t.leaves) {
    Json path = Json::array();
    for (const auto& st : l.path)
      path.push_back({{"event", st.event}, {"outcome", st.outcome}, {"probability", st.probability},
                      {"outcome_sum", st.outcome_sum}});
    leaves.push_back({{"path", path},
                      {"probability", l.probability},
                      {"decision", l.decision},
                      {"pre_correction_fidelity", l.pre_correction_fidelity},
                      {"residual_fidelity", l.residual_fidelity}});
  }
  return {{"input", t.input},
          {"leaves", leaves},
          {"leaf_probability_sum", t.leaf_probability_sum()},
          {"max_node_defect", t.max_node_defect()},
          {"zero_error", t.zero_error()},
          {"min_residual_fidelity", t.min_residual_fidelity()}};
}

Json to_json(const ChannelReport& r) {
  Json j = {{"delta", r.delta},
            {"shots", r.shots},
            {"min_copies", r.min_copies},
            {"one_shot_below_two_bits", r.one_shot_below_two_bits},
            {"multi_shot_applicable", r.multi_shot_applicable},
            {"messages_total", r.messages_total},
            {"messages_decoded", r.messages_decoded},
            {"leaves", r.leaves},
            {"bits", r.bits},
            {"zero_error", r.zero_error}};
  if (r.one_shot) j["one_shot"] = to_json(*r.one_shot);
  return j;
}

// ---------------------------------------------------------------------------

void Report::add(std::string name, bool pass, std::string detail) {
  verdicts.push_back({std::move(name), pass, std::move(detail)});
}

bool Report::all_pass() const {
  return !verdicts.empty() && std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.pass; });
}

int Report::exit_status() const {
  if (!converged) return 3;
  return all_pass() ? 0 : 1;
}

Json Report::to_json() const {
  Json v = Json::array();
  for (const auto& x : verdicts) v.push_back({{"name", x.name}, {"pass", x.pass}, {"detail", x.detail}});
  Json j = {{"experiment", experiment},
            {"parameters", parameters},
            {"verdicts", v},
            {"certificates", certificates},
            {"converged", converged},
            {"all_pass", all_pass()}};
  if (branches) j["branches"] = *branches;
  return j;
}

std::string Report::to_table() const {
  std::ostringstream os;
  os << "experiment: " << experiment << '\n';
  for (const auto& [k, v] : parameters.items()) os << "  " << k << " = " << v.dump() << '\n';
  std::size_t width = 0;
  for (const auto& x : verdicts) width = std::max(width, x.name.size());
  for (const auto& x : verdicts) {
    os << (x.pass ? "PASS  " : "FAIL  ") << std::left << std::setw(static_cast<int>(width)) << x.name;
    if (!x.detail.empty()) os << "  " << x.detail;
    os << '\n';
  }
  os << (exit_status() == 0 ? "all verdicts pass" : "verdict failure") << '\n';
  return os.str();
}

}  // namespace pptlab
