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
#include <string>
#include <vector>

#include "distlab/diffeo.hpp"
#include "distlab/kit.hpp"
#include "distlab/words.hpp"

namespace distlab {

// Word-length certificate: an explicit word over Gamma witnessing an upper
// bound (with a numerical equality residual) paired with a derivative-growth
// lower bound.  Exact word lengths are intractable here (element equality is
// only numerical), so upper-by-word plus lower-by-derivative is the whole
// currency.
struct Certificate {
  std::string target;            // description, e.g. "fbar^8"
  std::int64_t power_n = 0;      // the power being certified
  GeneratorWord upper_word;
  std::int64_t upper_length = 0;
  double equality_residual = 0.0;
  double residual_threshold = 1e-7;
  bool failed = false;           // residual above threshold
  double lower_bound = 0.0;      // log(max D target)/log(C)
  bool consistent = false;       // lower_bound <= upper_length

  std::string to_json_string() const;
};

// Certificate for fbar^{n/2} (n = 2^i) from the constructive relation
// fbar^m = f f^m h_m f^{-1} with h_{n/2} = (fhat^i c_n fhat^{-i})^{ell}.
// Also carries the word-budget bookkeeping of the final estimate.
struct FbarCertificate {
  Certificate cert;
  int i = 0;
  std::int64_t n = 0;            // 2^i
  std::int64_t ell = 0;
  std::int64_t fn_word_length = 0;      // |f^n| via bs_power_word
  std::int64_t h_word_length = 0;       // constructed word for h_{n/2}
  std::int64_t h_budget = 0;            // 2 ell (5i + 4 + 4 |f^n|)
  std::int64_t total_budget = 0;        // h_budget + |f^{n/2}| + 2
};

struct GrowthBound {
  double log_C = 0.0;  // C = max over generators and inverses of sup D
  struct Entry {
    std::int64_t n;
    double log_max_deriv;  // log max_x D d^n(x)
    double lower_bound;    // log(max)/log(C)
  };
  std::vector<Entry> entries;
  struct Witness {
    std::int64_t n;
    double x;
    double log_deriv;  // >= log n
  };
  std::vector<Witness> witnesses;
};

// C from the given generators, M_n = max over the grid of D d^n by orbit
// chain rule, lower bounds log(M_n)/log(C), and every Polterovich-Sodin
// witness D d^n(x) >= n found on the grid.
GrowthBound derivative_growth_lower_bound(const Diffeo& d, const std::vector<Diffeo>& gens,
                                          const std::vector<std::int64_t>& n_list,
                                          int grid = 2000);

// The word over Gamma for h_{n/2} = (fhat^i c_n fhat^{-i})^{ell} with f^{±n}
// expanded through bs_power_word.
GeneratorWord h_half_word(const ConstructionKit& kit, int i);

FbarCertificate fbar_power_certificate(const ConstructionKit& kit, int i,
                                       const GrowthBound* growth = nullptr,
                                       int grid = 10000);

struct LipschitzChain {
  double log_L = 0.0;           // max over generators and inverses of sup D
  std::int64_t word_length = 0; // ell_n
  double bound = 0.0;           // ell_n log L
  double measured_log_lip = 0.0;
  bool holds = false;           // measured <= bound + 1e-6
};

LipschitzChain lipschitz_chain_check(const ConstructionKit& kit, const GeneratorWord& word,
                                     int grid = 2000);

// Shared helper: log C (= log L) measured over the six generators and their
// inverses on a grid, with one refinement pass near the detected maxima.
double measured_log_C(const ConstructionKit& kit, int grid = 10000);

}  // namespace distlab
