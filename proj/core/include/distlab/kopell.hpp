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

#include <functional>
#include <vector>

#include "distlab/kit.hpp"

namespace distlab {

// Kopell-type C^1 extension check.  Given f_inner with f_inner(x) < x on the
// interior of (0, x_0] and a sequence g_n of flow maps of [x_tilde_1, x_0]
// (time tau_n, tangent to the identity at the endpoints), builds the
// blockwise map g = f_inner^n g_n f_inner^{-n} on [x_tilde_{n+1}, x_tilde_n]
// and measures e_n = max |Dg - 1| there.  g extends C^1 to the fixed point
// iff e_n -> 0, which happens iff g_n -> id in C^1.
struct KopellResult {
  enum class Verdict { kC1, kNotC1, kInconclusive };

  std::vector<double> e_n;  // e_n[k] for block k+1 (n = 1..n_max)
  Verdict verdict = Verdict::kInconclusive;
  double lipschitz_C = 0.0;  // measured Lipschitz constant of log Df_inner

  // The three displayed estimates of the proof, at sampled points:
  //  (1) |z_n - y_n| / |x_0 - x_tilde_1|          <= eps_n
  //  (2) |f^i(z_n) - f^i(y_n)| / |x_n - x_{n+1}|  <= eps_n e^C
  //  (3) |log(Df^n(z_n)/Df^n(y_n))|               <= C eps_n e^C
  struct ChainSample {
    int n = 0;
    double y = 0.0;
    double eps_n = 0.0;
    double step1_lhs = 0.0;
    double step2_lhs = 0.0;  // max over i in {1, n/2, n}
    double step3_lhs = 0.0;
    double step3_bound = 0.0;  // C eps e^C
    bool holds = false;
  };
  std::vector<ChainSample> samples;
};

KopellResult kopell_check(const ConstructionKit& kit, const Diffeo& f_inner,
                          const std::function<double(int)>& tau, int n_max,
                          int grid_per_block = 48);

// Convenience form with f_inner = invert(kit.f()).
KopellResult kopell_check(const ConstructionKit& kit,
                          const std::function<double(int)>& tau, int n_max,
                          int grid_per_block = 48);

}  // namespace distlab
