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
#include <string>
#include <vector>

#include "distlab/chart.hpp"
#include "distlab/interval.hpp"

namespace distlab {

// A primitive monotone map of the ambient interval: strictly increasing,
// identity outside its support, derivative 1 there.  Immutable and shared
// between words; all evaluation is const.
class Primitive {
 public:
  virtual ~Primitive() = default;

  virtual std::string kind() const = 0;
  virtual std::string name() const = 0;

  // Evaluate the map / its inverse; log_deriv (optional) receives the log
  // derivative of the evaluated map at y.
  virtual DD forward(const DD& y, DD* log_deriv = nullptr) const = 0;
  virtual DD inverse(const DD& y, DD* log_deriv = nullptr) const = 0;

  virtual IntervalSet support() const = 0;

  // Parameter description for serialization (JSON object body as text).
  virtual std::string params_json() const = 0;
};

using PrimitivePtr = std::shared_ptr<const Primitive>;

// y -> y (kept for completeness of the primitive vocabulary).
PrimitivePtr make_identity_primitive();

// y -> a y + b with a > 0.  Used as a conjugator block, not as a standalone
// word letter (an affine map is not compactly supported).
PrimitivePtr make_affine_primitive(const DD& a, const DD& b);

// Time-t map of the base field Y, extended by the identity outside [0,1].
PrimitivePtr make_flow_translate_primitive(std::shared_ptr<const Chart> chart, const DD& t,
                                           std::string name);

// Time-s map of Yhat: y -> phi(2^s T(y)), identity outside [0,1].
PrimitivePtr make_flow_scale_primitive(std::shared_ptr<const Chart> chart, double s,
                                       std::string name);

// A^{-1} o (time-t map of Y) o A where A is the affine map [lo,hi] -> [0,1];
// identity outside [lo, hi].  This realizes g = phi0^{-1} f phi0.
PrimitivePtr make_conjugated_flow_primitive(std::shared_ptr<const Chart> chart, const DD& t,
                                            const DD& lo, const DD& hi, std::string name);

// Blockwise flow: on each interval [x_n, x_{n+1}] = f^n([x_0, x_1]) with an
// entry in `blocks`, acts as f^n A^{-1} Phi^{tau_n} A f^{-n}; identity on all
// other blocks.  Realizes hhat (scaling flows) and h (translation flows).
struct BlockTime {
  // translation time (kind translate), or scale data (kind scale)
  DD t;           // translate: flow time
  DD factor;      // scale: 2^{s_n}
  double log2;    // scale: s_n
};

PrimitivePtr make_block_flow_primitive(std::shared_ptr<const Chart> chart, bool scaling,
                                       std::map<std::int64_t, BlockTime> blocks,
                                       const DD& x0, const DD& x1, std::string name);

// Monotone C^1 piecewise-cubic interpolant; segments may be flagged as exact
// identity.  Realizes psi.
struct CubicKnot {
  DD x;
  DD y;
  DD d;  // derivative
  bool identity_to_next = false;
};

PrimitivePtr make_monotone_cubic_primitive(std::vector<CubicKnot> knots, std::string name);

}  // namespace distlab
