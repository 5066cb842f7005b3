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
#include <cstdint>
#include <limits>
#include <string>

namespace distlab {

// Double-double scalar: an unevaluated sum hi + lo with |lo| <= ulp(hi)/2,
// giving ~31 significant decimal digits.  The chart internals need this
// because the working field decays like exp(-exp(.)) and plain doubles lose
// all structure near the support boundary.
//
// The error-free transformations follow the classic QD/Bailey layout.
struct DD {
  double hi = 0.0;
  double lo = 0.0;

  constexpr DD() = default;
  constexpr DD(double h) : hi(h), lo(0.0) {}
  constexpr DD(double h, double l) : hi(h), lo(l) {}

  double to_double() const { return hi + lo; }
  explicit operator double() const { return hi + lo; }
};

namespace dd_detail {

inline DD quick_two_sum(double a, double b) {
  // requires |a| >= |b|
  double s = a + b;
  return DD(s, b - (s - a));
}

inline DD two_sum(double a, double b) {
  double s = a + b;
  double bb = s - a;
  double err = (a - (s - bb)) + (b - bb);
  return DD(s, err);
}

inline DD two_prod(double a, double b) {
  double p = a * b;
  return DD(p, std::fma(a, b, -p));
}

}  // namespace dd_detail

inline DD dd_renorm(double hi, double lo) {
  return dd_detail::quick_two_sum(hi, lo);
}

// ---- addition / subtraction ----

inline DD operator+(const DD& a, const DD& b) {
  DD s = dd_detail::two_sum(a.hi, b.hi);
  DD t = dd_detail::two_sum(a.lo, b.lo);
  s.lo += t.hi;
  s = dd_detail::quick_two_sum(s.hi, s.lo);
  s.lo += t.lo;
  return dd_detail::quick_two_sum(s.hi, s.lo);
}

inline DD operator+(const DD& a, double b) {
  DD s = dd_detail::two_sum(a.hi, b);
  s.lo += a.lo;
  return dd_detail::quick_two_sum(s.hi, s.lo);
}

inline DD operator+(double a, const DD& b) { return b + a; }

inline DD operator-(const DD& a) { return DD(-a.hi, -a.lo); }

inline DD operator-(const DD& a, const DD& b) { return a + DD(-b.hi, -b.lo); }
inline DD operator-(const DD& a, double b) { return a + (-b); }
inline DD operator-(double a, const DD& b) { return DD(a) + (-b); }

// ---- multiplication / division ----

inline DD operator*(const DD& a, const DD& b) {
  DD p = dd_detail::two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return dd_detail::quick_two_sum(p.hi, p.lo);
}

inline DD operator*(const DD& a, double b) {
  DD p = dd_detail::two_prod(a.hi, b);
  p.lo += a.lo * b;
  return dd_detail::quick_two_sum(p.hi, p.lo);
}

inline DD operator*(double a, const DD& b) { return b * a; }

inline DD operator/(const DD& a, const DD& b) {
  double q1 = a.hi / b.hi;
  DD r = a - b * q1;
  double q2 = r.hi / b.hi;
  r = r - b * q2;
  double q3 = r.hi / b.hi;
  DD q = dd_detail::quick_two_sum(q1, q2);
  return q + q3;
}

inline DD operator/(const DD& a, double b) { return a / DD(b); }
inline DD operator/(double a, const DD& b) { return DD(a) / b; }

inline DD& operator+=(DD& a, const DD& b) { a = a + b; return a; }
inline DD& operator+=(DD& a, double b) { a = a + b; return a; }
inline DD& operator-=(DD& a, const DD& b) { a = a - b; return a; }
inline DD& operator-=(DD& a, double b) { a = a - b; return a; }
inline DD& operator*=(DD& a, const DD& b) { a = a * b; return a; }
inline DD& operator*=(DD& a, double b) { a = a * b; return a; }
inline DD& operator/=(DD& a, const DD& b) { a = a / b; return a; }
inline DD& operator/=(DD& a, double b) { a = a / b; return a; }

// Exact scaling by a power of two.
inline DD dd_ldexp(const DD& a, int n) {
  return DD(std::ldexp(a.hi, n), std::ldexp(a.lo, n));
}

inline DD dd_mul_pwr2(const DD& a, double p) {
  return DD(a.hi * p, a.lo * p);
}

// ---- comparisons ----

inline bool operator==(const DD& a, const DD& b) { return a.hi == b.hi && a.lo == b.lo; }
inline bool operator!=(const DD& a, const DD& b) { return !(a == b); }
inline bool operator<(const DD& a, const DD& b) {
  return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo);
}
inline bool operator>(const DD& a, const DD& b) { return b < a; }
inline bool operator<=(const DD& a, const DD& b) { return !(b < a); }
inline bool operator>=(const DD& a, const DD& b) { return !(a < b); }
inline bool operator<(const DD& a, double b) { return a < DD(b); }
inline bool operator>(const DD& a, double b) { return a > DD(b); }
inline bool operator<=(const DD& a, double b) { return a <= DD(b); }
inline bool operator>=(const DD& a, double b) { return a >= DD(b); }

inline DD dd_abs(const DD& a) { return (a.hi < 0.0) ? -a : a; }

inline bool dd_isfinite(const DD& a) { return std::isfinite(a.hi); }

// ---- constants ----

namespace dd_const {
inline constexpr DD ln2{6.931471805599452862e-01, 2.319046813846299558e-17};
inline constexpr DD pi{3.141592653589793116e+00, 1.224646799147353207e-16};
inline constexpr double eps = 4.93038065763132e-32;  // 2^-104
}  // namespace dd_const

// ---- elementary functions ----

DD dd_sqrt(const DD& a);
DD dd_exp(const DD& a);
DD dd_log(const DD& a);
DD dd_expm1(const DD& a);
DD dd_log1p(const DD& a);
DD dd_floor(const DD& a);
DD dd_pow2(const DD& a);  // 2^a
DD dd_cos_taylor(const DD& a);  // |a| <= 0.2; used to seed Chebyshev node tables
DD dd_sin_taylor(const DD& a);

// exp(4), used to normalize the default chart field so Y(1/2) = 1.
const DD& dd_e4();

std::string dd_to_string(const DD& a);

}  // namespace distlab
