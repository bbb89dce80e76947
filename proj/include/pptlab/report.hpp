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

// JSON forms of the library types and the experiment report.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "pptlab/analytic.hpp"
#include "pptlab/discrimination.hpp"
#include "pptlab/linalg.hpp"
#include "pptlab/protocols.hpp"
#include "pptlab/sdp_solver.hpp"
#include "pptlab/states.hpp"

namespace pptlab {

using Json = nlohmann::json;

/// {"dim": n, "entries": [[[re, im], ...], ...], "factor_dims": [...], "cut": k}
Json to_json(const BipartiteOperator& op);
Json matrix_to_json(const ComplexMatrix& m);
BipartiteOperator operator_from_json(const Json& j);
ComplexMatrix matrix_from_json(const Json& j);

/// Same layout with "amplitudes": [[re, im], ...] in place of "entries".
Json to_json(const StateVector& s);
StateVector state_from_json(const Json& j);

Json to_json(const analytic::ProofTrace& trace);

/// {"num_vars", "b", "offset", "blocks": [{"dim", "c", "terms": [{"var", "entries": [[r, c, re, im]]}]}]}
Json to_json(const sdp::SdpProblem<cplx>& p);
sdp::SdpProblem<cplx> sdp_problem_from_json(const Json& j);
Json to_json(const sdp::SdpSolution<cplx>& s, bool include_blocks);

Json to_json(const PptResult& r, bool include_matrices = false);
Json to_json(const TraceBoundReport& r);
Json to_json(const ThresholdSweep& s);
Json to_json(const BranchTree& t);
Json to_json(const ChannelReport& r);

struct Verdict {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct Report {
  std::string experiment;
  Json parameters = Json::object();
  std::optional<Json> branches;
  std::vector<Verdict> verdicts;
  Json certificates = Json::object();
  /// False when any solve ended without an optimal status.
  bool converged = true;

  void add(std::string name, bool pass, std::string detail = {});
  bool all_pass() const;
  /// 0 all verdicts pass, 3 a solve did not converge, 1 otherwise.
  int exit_status() const;
  Json to_json() const;
  std::string to_table() const;
};

}  // namespace pptlab
