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

#include <cmath>
#include <stdexcept>

#include "distlab/dd.hpp"

namespace distlab {

// A flow time on the chart line.  Near the chart basepoint times are small
// and must carry double-double precision (translation by 1 has to stay
// resolvable); towards the interval boundary |T| grows beyond any float
// range, where only the logarithm matters (the maps acting there are pure
// scalings).  Representation:
//   - linear zone: |value| <= kLinearMax, stored as DD
//   - log zone:    sign and log|T| stored as double
// Translations in the log zone are below representable resolution and are
// dropped, which matches the true displacement (below 1e-250 in space).
class ChartTime {
 public:
  static constexpr double kLinearMax = 1e280;
  static constexpr double kReentryLog = 644.0;  // < log(kLinearMax) - 0.7

  ChartTime() = default;

  static ChartTime from_dd(const DD& v) {
    ChartTime t;
    if (std::abs(v.hi) > kLinearMax) {
      t.log_zone_ = true;
      t.sign_ = v.hi < 0.0 ? -1 : 1;
      t.log_abs_ = std::log(std::abs(v.hi));
    } else {
      t.value_ = v;
    }
    return t;
  }

  static ChartTime from_log(int sign, double log_abs) {
    ChartTime t;
    if (log_abs <= kReentryLog) {
      t.value_ = dd_mul_pwr2(dd_exp(DD(log_abs)), double(sign));
    } else {
      t.log_zone_ = true;
      t.sign_ = sign;
      t.log_abs_ = log_abs;
    }
    return t;
  }

  bool log_zone() const { return log_zone_; }
  const DD& value() const { return value_; }  // valid in linear zone
  int sign() const {
    if (log_zone_) return sign_;
    if (value_.hi == 0.0 && value_.lo == 0.0) return 0;
    return value_.hi < 0.0 ? -1 : 1;
  }
  double log_abs() const {
    if (log_zone_) return log_abs_;
    double a = std::abs(value_.to_double());
    return a == 0.0 ? -std::numeric_limits<double>::infinity() : std::log(a);
  }

  ChartTime translated(const DD& t) const {
    if (log_zone_) return *this;  // |t| / |T| < 1e-260: below resolution
    return from_dd(value_ + t);
  }

  // Multiply by 2^s; `factor` must equal 2^s in double-double.
  ChartTime scaled_pow2(const DD& factor, double s) const {
    if (log_zone_) {
      double la = log_abs_ + s * dd_const::ln2.hi;
      if (la <= kReentryLog) return from_log(sign_, la);
      ChartTime t;
      t.log_zone_ = true;
      t.sign_ = sign_;
      t.log_abs_ = la;
      return t;
    }
    DD v = value_ * factor;
    if (std::abs(v.hi) > kLinearMax) {
      ChartTime t;
      t.log_zone_ = true;
      t.sign_ = v.hi < 0.0 ? -1 : 1;
      t.log_abs_ = std::log(std::abs(value_.to_double())) + s * dd_const::ln2.hi;
      return t;
    }
    ChartTime t;
    t.value_ = v;
    return t;
  }

  ChartTime negated() const {
    ChartTime t = *this;
    if (log_zone_) t.sign_ = -t.sign_;
    else t.value_ = -t.value_;
    return t;
  }

 private:
  bool log_zone_ = false;
  DD value_{0.0};
  int sign_ = 1;
  double log_abs_ = 0.0;
};

}  // namespace distlab
