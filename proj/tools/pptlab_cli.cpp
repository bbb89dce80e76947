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

// pptlab <experiment> [options]
//
// Exit codes: 0 all verdicts pass, 1 a verdict failed, 2 usage error,
// 3 solver did not converge, 4 I/O error.

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "pptlab/experiments.hpp"

namespace {

constexpr int kUsage = 2;
constexpr int kIo = 4;

// "0.5:0.05:0.8,0.6667" -> values; ranges are inclusive.
std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::vector<double> parts;
    std::stringstream is(item);
    std::string p;
    while (std::getline(is, p, ':')) {
      try {
        std::size_t used = 0;
        parts.push_back(std::stod(p, &used));
        if (used != p.size()) throw std::invalid_argument(p);
      } catch (const std::exception&) {
        throw pptlab::UsageError("bad grid value '" + p + "'");
      }
    }
    if (parts.size() == 1) {
      out.push_back(parts[0]);
    } else if (parts.size() == 3 && parts[1] > 0 && parts[2] >= parts[0]) {
      const int n = static_cast<int>(std::floor((parts[2] - parts[0]) / parts[1] + 1e-9));
      for (int k = 0; k <= n; ++k) out.push_back(parts[0] + k * parts[1]);
    } else {
      throw pptlab::UsageError("grid ranges are start:step:stop");
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PPT discrimination and local protocol experiments"};
  app.require_subcommand(1);

  pptlab::ExperimentConfig cfg;
  double tol = cfg.solver.gap_tol;
  int max_iters = cfg.solver.max_iters;
  double delta = 0.0, epsilon = 0.0;
  int input = 0, shots = 0;
  std::string grid;

  app.add_subcommand("list", "list experiments");
  for (const auto& info : pptlab::list_experiments()) {
    auto* sub = app.add_subcommand(info.name, info.description);
    sub->add_option("--tol", tol, "duality gap tolerance")->capture_default_str();
    sub->add_option("--max-iters", max_iters, "solver iteration limit")->capture_default_str();
    sub->add_option("--out", cfg.out, "output file (stdout when omitted)");
    sub->add_option("--format", cfg.format, "json or table")->capture_default_str();
    if (info.name == "theorem1") {
      sub->add_option("--samples", cfg.samples, "random operators per d")->capture_default_str();
      sub->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
    } else if (info.name == "theorem2") {
      sub->add_option("--method", cfg.method, "sdp or analytic")->capture_default_str();
      sub->add_option("--priors", cfg.priors, "four prior probabilities")->expected(4);
    } else if (info.name == "catalysis") {
      sub->add_option("--input", input, "index 0..3 (all when omitted)");
    } else if (info.name == "tensor-power" || info.name == "channel") {
      sub->add_option("--delta", delta, "two-term state parameter in (0, 1/2)");
      if (info.name == "channel") sub->add_option("--shots", shots, "channel uses (1 and min copies by default)");
    } else if (info.name == "threshold") {
      sub->add_option("--grid", grid, "lambda0 values, e.g. 0.5:0.05:0.8,0.6667");
    } else if (info.name == "sdp-solve") {
      sub->add_option("--input", cfg.input_path, "SDP problem in JSON");
      sub->add_option("--epsilon", epsilon, "perturbation weight for the Lemma instance");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  auto* chosen = app.get_subcommands().front();
  if (chosen->get_name() == "list") {
    for (const auto& info : pptlab::list_experiments())
      std::cout << info.name << "\t" << info.anchor << "\t" << info.description << "\n";
    return 0;
  }

  try {
    const auto given = [&](const std::string& flag) {
      const auto* opt = chosen->get_option_no_throw(flag);
      return opt != nullptr && opt->count() > 0;
    };
    cfg.name = chosen->get_name();
    cfg.solver.gap_tol = tol;
    cfg.solver.max_iters = max_iters;
    if (given("--delta")) cfg.delta = delta;
    if (given("--epsilon")) cfg.epsilon = epsilon;
    if (cfg.name == "catalysis" && given("--input")) cfg.input = input;
    if (given("--shots")) cfg.shots = shots;
    if (!grid.empty()) cfg.grid = parse_grid(grid);

    const auto report = pptlab::run(cfg);
    const std::string text = pptlab::render(report, cfg.format);
    if (cfg.out.empty()) {
      std::cout << text;
    } else {
      std::ofstream os(cfg.out);
      if (!(os << text)) throw pptlab::IoError("cannot write " + cfg.out);
    }
    return report.exit_status();
  } catch (const pptlab::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const pptlab::IoError& e) {
    std::cerr << "i/o error: " << e.what() << "\n";
    return kIo;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  }
}
