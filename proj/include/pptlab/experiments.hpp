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

// Named experiments behind the command-line tool.

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pptlab/report.hpp"
#include "pptlab/sdp_solver.hpp"

namespace pptlab {

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  std::string name;
  std::optional<double> delta;
  std::optional<double> epsilon;
  std::vector<double> grid;
  std::vector<double> priors;
  std::optional<int> input;      // catalysis
  std::optional<int> shots;      // channel
  std::string method = "sdp";    // theorem2: sdp | analytic
  std::string input_path;       // sdp-solve problem file
  int samples = 1000;            // theorem1 random operators per d
  std::uint64_t seed = 20260415;
  sdp::SolverOptions solver;
  std::string out;
  std::string format = "json";   // json | table

  /// Throws UsageError for unknown names or out-of-range parameters.
  void validate() const;
};

struct ExperimentInfo {
  std::string name;
  std::string anchor;
  std::string description;
};

/// Stable order.
const std::vector<ExperimentInfo>& list_experiments();

/// Runs the named experiment; IoError for unreadable inputs.
Report run(const ExperimentConfig& config);

/// Serializes per config.format and writes to config.out (stdout when empty); IoError on failure.
std::string render(const Report& report, const std::string& format);

}  // namespace pptlab
