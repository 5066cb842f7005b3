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

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "distlab/chart_time.hpp"
#include "distlab/chebyshev.hpp"
#include "distlab/dd.hpp"

namespace distlab {

class ConstructionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class PrecisionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Boundary-flat fields on [0,1], normalized so Y(1/2) = 1:
//   kDoubleExp: Y(y) = exp(e^4 - exp(w)),  w = 1/(y(1-y))   [the default]
//   kSingleExp: Y(y) = exp(4 - w)                            [probe contrast]
// Both have time integrals T(y) = int_{1/2}^{y} du/Y(u) diverging at the
// endpoints, so phi = T^{-1} maps R onto (0,1).
enum class FieldKind { kDoubleExp, kSingleExp };

FieldKind field_kind_from_name(const std::string& name);
std::string field_kind_name(FieldKind kind);

struct ChartReport {
  double max_round_trip = 0.0;       // |phi(T(y)) - y| over the probe grid
  double max_quadrature_rel = 0.0;   // accelerated T vs direct quadrature
  double central_tail = 0.0;         // Chebyshev tail magnitudes
  double far_tail = 0.0;
};

// The chart phi: R -> (0,1) realized through the time integral of the chosen
// field, with phi(0) = basepoint.  All maps are double-double accurate
// (validated round trips ~1e-26); the boundary zone where not even log|T| is
// representable (w > 700, i.e. y within ~1.4e-3 of an endpoint) is treated as
// exactly fixed, which over-reports displacements there by less than 1e-290.
//
// Immutable after construction; all evaluations are const and thread-safe.
class Chart {
 public:
  explicit Chart(FieldKind kind = FieldKind::kDoubleExp, double basepoint = 0.5);

  FieldKind kind() const { return kind_; }
  double basepoint() const { return basepoint_; }
  const ChartReport& report() const { return report_; }

  // ---- coordinates ----

  // True if y is inside (0,1) but too close to an endpoint to chart.
  bool deep(const DD& y) const;
  // True if flows act on y at all (inside (0,1) and not deep).
  bool chartable(const DD& y) const;

  ChartTime time_of(const DD& y) const;   // requires chartable(y)
  DD point_of(const ChartTime& x) const;  // phi
  DD marker(const DD& q) const { return point_of(ChartTime::from_dd(q)); }

  // ---- field data ----

  DD V(const DD& y) const;  // -log Y(y); requires y in (0,1), not deep
  double Y(double y) const;
  double log_Y(double y) const;       // asymptotic-safe down to y ~ 1e-12
  double Yhat(double y) const;        // ln2 * T(y) * Y(y), signed
  double log_abs_Yhat(double y) const;

  // ---- flows ----
  // Both apply the identity convention outside the chartable zone and when
  // the flowed time leaves the representable range.  log_deriv receives
  // log D(flow) at y (0 in the identity zone).

  DD flow_translate(const DD& y, const DD& t, DD* log_deriv = nullptr) const;
  // y -> phi(2^s T(y)); factor must equal 2^s in double-double.
  DD flow_scale(const DD& y, const DD& factor, double s, DD* log_deriv = nullptr) const;

  // Reference path: T(y) by direct adaptive quadrature (no Chebyshev), used
  // for cross-validation.  Only valid in the central zone (V <= 120).
  DD time_by_quadrature(const DD& y) const;

 private:
  struct Model;  // field-specific closed forms
  struct Loc {
    int side = 1;
    DD v;  // V(y) = -log Y(y)
  };

  Loc locate(const DD& y) const;
  ChartTime time_from_loc(const Loc& loc) const;
  DD solve_central(const DD& abs_time) const;      // invert s e^{s^2} F(s)
  DD solve_far(const DD& log_abs_time) const;      // invert V + N(log V)
  DD point_from_v(const DD& v, int side) const;    // y from V = -log Y
  ChartTime time_raw(const DD& y) const;           // basepoint-1/2 convention
  DD point_raw(const ChartTime& x, DD* v_out = nullptr) const;

  DD central_F(const DD& s) const;        // F(s) = H(s)/(s e^{s^2})
  DD central_F_prime(const DD& s) const;
  double central_F_double(double s) const;
  double central_Fp_double(double s) const;
  double central_M_double(double s) const;  // log(H/s) = s^2 + log F

  void build_tables();
  void validate();

  FieldKind kind_;
  double basepoint_;
  ChartTime t0_;  // T_{1/2}(basepoint)

  std::shared_ptr<const Model> model_;
  // M(s) on [0, sqrt(V_split)]: one fit for double_exp, panels for single_exp
  bool central_is_paneled_ = false;
  ChebyshevFit central_;
  ChebyshevFit central_deriv_;
  std::vector<ChebyshevFit> central_panels_;
  std::vector<ChebyshevFit> central_derivs_;
  std::vector<double> central_breaks_;
  PanelFit far_;                // N(lambda) = log G on [log V_split, log V_cap]
  PanelFit far_deriv_;
  DD t_split_;          // H(sqrt(V_split)): central/far dispatch for phi
  double x_deep_ = 0.0;  // log|T| at the deep-zone edge; beyond: identity
  double s_hi_ = 0.0;    // sqrt(V_split)
  double lambda_cap_ = 0.0;
  ChartReport report_;

  static constexpr double kVSplit = 120.0;
  static constexpr double kWDeep = 700.0;  // w cap; beyond is the deep zone
};

// Builds a chart for a named field after validating positivity on (0,1).
// Recognized names: "double_exp", "single_exp", and the deliberately invalid
// "pinched" (interior zero; rejected with ConstructionError).
Chart make_chart(const std::string& field_name, double basepoint = 0.5);

}  // namespace distlab
