// Copyright 2026 The distlab authors
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

// Experiment runner: builds the construction kit from a config, runs the
// verification suites, and writes machine-readable reports plus per-suite
// CSVs for external plotting.
//
//   distlab all --config cfg.json --out results/
//   distlab probe-chart
//   distlab verify-construction --imax 4
//   distlab distortion | certify | kopell
//
// Exit status is nonzero iff any check failed or errored (errors are
// distinguished from failures inside report.json).

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "distlab/experiment.hpp"

namespace {

using distlab::ExperimentConfig;
using distlab::ExperimentResult;
using distlab::ExperimentRunner;

struct CommonOpts {
  std::string config_path;
  std::string out_dir;
  int imax = 0;   // 0: keep config value
  int grid = 0;
};

void add_common(CLI::App* cmd, CommonOpts* opts) {
  cmd->add_option("--config", opts->config_path, "experiment config (JSON)");
  cmd->add_option("--out", opts->out_dir, "output directory");
  cmd->add_option("--imax", opts->imax, "override i_max (even integer >= 2)");
  cmd->add_option("--grid", opts->grid, "override the equality-check grid size");
}

ExperimentConfig load_config(const CommonOpts& opts) {
  ExperimentConfig cfg;
  if (!opts.config_path.empty()) cfg = ExperimentConfig::from_json_file(opts.config_path);
  if (!opts.out_dir.empty()) cfg.out_dir = opts.out_dir;
  if (opts.imax != 0) cfg.i_max = opts.imax;
  if (opts.grid != 0) cfg.grid = opts.grid;
  cfg.validate();
  return cfg;
}

int run_suites(const CommonOpts& opts, const std::vector<std::string>& suites) {
  ExperimentConfig cfg;
  try {
    cfg = load_config(opts);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }

  ExperimentRunner runner(cfg);
  ExperimentResult result = runner.run(suites);

  int pass = 0, fail = 0, error = 0, skip = 0;
  for (const auto& suite : result.suites) {
    for (const auto& rec : suite.records) {
      if (rec.status == "pass") ++pass;
      else if (rec.status == "fail") ++fail;
      else if (rec.status == "error") ++error;
      else ++skip;
      if (rec.status != "pass") {
        std::cout << "[" << rec.status << "] " << suite.name << "/" << rec.name;
        if (!rec.note.empty()) std::cout << "  (" << rec.note << ")";
        std::cout << "\n";
      }
    }
    std::cout << "suite " << suite.name << ": " << suite.records.size() << " checks in "
              << suite.seconds << " s\n";
  }
  std::cout << "total: " << pass << " pass, " << fail << " fail, " << error << " error, "
            << skip << " skip\n";

  std::filesystem::create_directories(cfg.out_dir);
  {
    std::ofstream out(cfg.out_dir + "/report.json");
    out << result.report_json_string() << "\n";
  }
  for (const auto& [name, body] : result.csv) {
    std::ofstream out(cfg.out_dir + "/" + name);
    out << body;
  }
  std::cout << "report written to " << cfg.out_dir << "/report.json\n";
  return (fail > 0 || error > 0) ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"distlab: interval diffeomorphism distortion laboratory"};
  app.require_subcommand(1);

  std::map<std::string, std::vector<std::string>> verbs = {
      {"probe-chart", {"chart"}},
      {"verify-construction", {"diffeo", "construction"}},
      {"distortion", {"distortion"}},
      {"certify", {"certify"}},
      {"kopell", {"kopell", "lipschitz"}},
      {"all", {}},
  };
  std::map<std::string, std::string> help = {
      {"probe-chart", "chart flatness, flow, and pushforward probes"},
      {"verify-construction", "group identities, supports, and the key identity"},
      {"distortion", "var(log Df^n)/n trends and subadditivity"},
      {"certify", "word-length certificates and derivative lower bounds"},
      {"kopell", "Kopell C1 extension suite and the Lipschitz/entropy chain"},
      {"all", "every suite"},
  };

  CommonOpts opts;
  std::string chosen;
  for (auto& [verb, suites] : verbs) {
    CLI::App* cmd = app.add_subcommand(verb, help[verb]);
    add_common(cmd, &opts);
    cmd->callback([&chosen, v = verb]() { chosen = v; });
  }

  CLI11_PARSE(app, argc, argv);
  return run_suites(opts, verbs[chosen]);
}
