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

#include "distlab/dd.hpp"

namespace distlab {

// Chebyshev interpolant of a smooth function on [a, b], fitted at
// Chebyshev-Lobatto points in double-double precision.  Fitting happens once
// at chart construction; evaluation (Clenshaw) is the hot path.
class ChebyshevFit {
 public:
  ChebyshevFit() = default;

  // Fit f at n+1 Lobatto nodes on [a, b].
  ChebyshevFit(const std::function<DD(const DD&)>& f, const DD& a, const DD& b, int n);

  DD eval(const DD& x) const;
  double eval_double(double x) const;

  // Derivative interpolant (coefficient recurrence).
  ChebyshevFit derivative() const;

  // Lobatto nodes used for the fit (handy for cumulative-integral fits).
  static std::vector<DD> lobatto_nodes(const DD& a, const DD& b, int n);

  // Build directly from known values at the Lobatto nodes (ascending in x).
  static ChebyshevFit from_values(const std::vector<DD>& values, const DD& a, const DD& b);

  const DD& lo() const { return a_; }
  const DD& hi() const { return b_; }
  double tail_magnitude() const;  // size of the last two coefficients

 private:
  void compute_coeffs(const std::vector<DD>& values_at_lobatto);

  DD a_{0.0}, b_{1.0};
  std::vector<DD> coeffs_;          // c_0/2 + sum c_j T_j
  std::vector<double> coeffs_d_;    // double copies for cheap pre-solves
};

// Piecewise Chebyshev interpolant over contiguous panels.
class PanelFit {
 public:
  PanelFit() = default;
  PanelFit(const std::function<DD(const DD&)>& f, const std::vector<double>& breakpoints,
           int n_per_panel);

  DD eval(const DD& x) const;
  double eval_double(double x) const;
  PanelFit derivative() const;
  double tail_magnitude() const;

 private:
  std::vector<ChebyshevFit> panels_;
  std::vector<double> breaks_;
};

}  // namespace distlab
