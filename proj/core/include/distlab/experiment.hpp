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

#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "distlab/kit.hpp"

namespace distlab {

struct ExperimentConfig {
  std::string field = "double_exp";
  double basepoint = 0.5;
  std::string ell_rule = "j_plus_1";  // "j_plus_1" | "explicit" | "none"
  std::vector<std::int64_t> ell_list;
  int i_max = 6;
  int grid = 10000;
  int var_partition = 64;
  std::int64_t n_max = 64;
  int kopell_n_max = 32;
  std::uint64_t seed = 20260808;
  std::string out_dir = "out";

  double tol_identity = 1e-8;
  double tol_marker = 1e-9;
  double tol_support = 1e-8;
  double tol_key_identity = 1e-7;
  double tol_certificate = 1e-7;
  double tol_subadditivity = 1e-4;

  void validate() const;
  Schedule schedule() const;
  std::string to_json_string() const;
  static ExperimentConfig from_json_string(const std::string& json);
  static ExperimentConfig from_json_file(const std::string& path);
  std::string hash() const;  // stable hash of the canonical json
};

struct CheckRecord {
  std::string suite;
  std::string name;
  std::string provenance;  // operation exercised
  std::string status;      // "pass" | "fail" | "error" | "skip"
  double measured = 0.0;
  double threshold = 0.0;
  std::string note;
};

struct SuiteReport {
  std::string name;
  std::vector<CheckRecord> records;
  double seconds = 0.0;
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<SuiteReport> suites;
  std::map<std::string, std::string> csv;  // filename -> body

  bool any_failure() const;
  bool any_error() const;
  std::string report_json_string() const;
};

// Runs the suites against one kit built from the config.  Suites are pure
// given the config (randomized samples are seeded from it), so reports and
// CSV bodies are reproducible byte for byte.
class ExperimentRunner {
 public:
  explicit ExperimentRunner(ExperimentConfig config);

  const ConstructionKit& kit();

  SuiteReport run_chart_suite();
  SuiteReport run_diffeo_suite();
  SuiteReport run_construction_suite();
  SuiteReport run_distortion_suite();
  SuiteReport run_certificate_suite();
  SuiteReport run_kopell_suite();
  SuiteReport run_lipschitz_suite();

  // All suites in order; `only` (when nonempty) selects by name.
  ExperimentResult run(const std::vector<std::string>& only = {});

 private:
  ExperimentConfig config_;
  std::shared_ptr<const Chart> chart_;
  std::optional<ConstructionKit> kit_;
  std::map<std::string, std::string> csv_;
};

}  // namespace distlab
