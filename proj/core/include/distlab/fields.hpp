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
#include <string>
#include <vector>

#include "distlab/chart.hpp"
#include "distlab/diffeo.hpp"
#include "distlab/interval.hpp"

namespace distlab {

// Strictly monotone map used to transport fields.  Implemented by Diffeo
// (ambient maps) and by the chart map phi itself.
class MonotoneMap {
 public:
  virtual ~MonotoneMap() = default;
  virtual DD eval(const DD& x) const = 0;
  virtual DD eval_inverse(const DD& y) const = 0;
  virtual DD log_deriv(const DD& x) const = 0;
  virtual std::string describe() const = 0;
};

std::shared_ptr<const MonotoneMap> as_monotone_map(Diffeo d);
// phi: R -> (0,1) for the given chart (shares ownership).
std::shared_ptr<const MonotoneMap> chart_phi_map(std::shared_ptr<const Chart> chart);

// A one-dimensional vector field with signed values, vanishing at the
// endpoints of each support component and of constant sign on each component
// interior.  Flows and flow derivatives are exact where closed forms exist.
class VectorField1D {
 public:
  enum class Kind {
    kUnit,        // X: value 1 on R (time-1 map x -> x+1)
    kLinearLog2,  // Xhat: value x ln 2 (time-1 map x -> 2x)
    kChartY,      // Y = phi_*(X) on [0,1]
    kChartYhat,   // Yhat = phi_*(Xhat) on [0,1]
    kPushforward,
  };

  static VectorField1D unit();
  static VectorField1D linear_log2();
  static VectorField1D chart_Y(std::shared_ptr<const Chart> chart);
  static VectorField1D chart_Yhat(std::shared_ptr<const Chart> chart);

  Kind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  const Interval& domain() const { return domain_; }
  // Zeros (support-component endpoints and interior fixed points).
  const std::vector<double>& zero_set() const { return zeros_; }

  double value(double y) const;

  DD flow(const DD& t, const DD& y) const;
  DD flow_log_deriv(const DD& t, const DD& y) const;

  friend VectorField1D pushforward(const VectorField1D& field,
                                   std::shared_ptr<const MonotoneMap> map);

 private:
  VectorField1D() = default;

  Kind kind_ = Kind::kUnit;
  std::string name_;
  Interval domain_{-1e300, 1e300};
  std::vector<double> zeros_;
  std::shared_ptr<const Chart> chart_;
  std::shared_ptr<const VectorField1D> base_;          // pushforward
  std::shared_ptr<const MonotoneMap> transport_;       // pushforward
};

VectorField1D pushforward(const VectorField1D& field,
                          std::shared_ptr<const MonotoneMap> map);

// Free-function forms of the flow operations.
double flow(const VectorField1D& field, double t, double y);
double flow_derivative(const VectorField1D& field, double t, double y);

// Boundary-flatness probe: log10 of V(y)/y^k at the given samples, reported
// as a comparable scalar even where the true ratio underflows every float
// (represented then by -(1e300 + w(y)), still strictly ordered).
struct FlatnessProbe {
  int k;
  std::vector<double> samples;
  std::vector<double> log10_ratio;
  bool decreasing;       // non-increasing along shrinking samples
  bool flat;             // final ratio below 1e-6
};

FlatnessProbe flatness_probe_Y(const Chart& chart, int k,
                               const std::vector<double>& samples);
FlatnessProbe flatness_probe_Yhat(const Chart& chart, int k,
                                  const std::vector<double>& samples);
std::vector<double> default_probe_samples();  // 1e-2 .. 1e-8

// Field-level consistency checks used by the test suites: sign constancy on
// support components and vanishing at component endpoints.
bool validate_field(const VectorField1D& field, int samples_per_component = 64);

}  // namespace distlab
