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

#include "distlab/dd.hpp"

#include <array>
#include <cstdio>
#include <stdexcept>

namespace distlab {

namespace {

// 1/k! for k = 2..17, computed once in double-double.
const std::array<DD, 16>& inv_factorials() {
  static const std::array<DD, 16> table = [] {
    std::array<DD, 16> t{};
    DD fact(2.0);
    for (int k = 2; k <= 17; ++k) {
      t[k - 2] = DD(1.0) / fact;
      fact = fact * double(k + 1);
    }
    return t;
  }();
  return table;
}

}  // namespace

DD dd_sqrt(const DD& a) {
  if (a.hi == 0.0 && a.lo == 0.0) return DD(0.0);
  if (a.hi < 0.0) throw std::domain_error("distlab::dd_sqrt: negative argument");
  double x = std::sqrt(a.hi);
  // One Newton step on y -> (y + a/y)/2 doubles the digits of the seed.
  DD y(x);
  y = dd_mul_pwr2(y + a / y, 0.5);
  y = dd_mul_pwr2(y + a / y, 0.5);
  return y;
}

DD dd_exp(const DD& a) {
  // exp(a) = 2^m * (exp(r))^512 with r = (a - m ln2)/512, |r| small.
  constexpr double inv_k = 1.0 / 512.0;

  if (a.hi <= -709.0) return DD(0.0);
  if (a.hi >= 709.782) return DD(std::numeric_limits<double>::infinity());
  if (a.hi == 0.0 && a.lo == 0.0) return DD(1.0);

  double m = std::floor(a.hi / dd_const::ln2.hi + 0.5);
  DD r = dd_mul_pwr2(a - dd_const::ln2 * m, inv_k);

  // Taylor series for exp(r) - 1.
  DD p = r * r;
  DD s = r + dd_mul_pwr2(p, 0.5);
  p = p * r;
  const auto& inv_fact = inv_factorials();
  DD t = p * inv_fact[1];  // r^3/3!
  int i = 2;
  double thresh = inv_k * dd_const::eps;
  do {
    s = s + t;
    p = p * r;
    t = p * inv_fact[i];
    ++i;
  } while (std::abs(t.to_double()) > thresh && i < 16);
  s = s + t;

  // Undo the /512 by 9 squarings of (1+s): (1+s)^2 - 1 = s^2 + 2s.
  for (int j = 0; j < 9; ++j) {
    s = dd_mul_pwr2(s, 2.0) + s * s;
  }
  s = s + 1.0;
  return dd_ldexp(s, int(m));
}

DD dd_log(const DD& a) {
  if (a.hi <= 0.0) throw std::domain_error("distlab::dd_log: non-positive argument");
  // Newton iteration y <- y + a*exp(-y) - 1, seeded at double precision.
  DD y(std::log(a.hi));
  y = y + a * dd_exp(-y) - 1.0;
  y = y + a * dd_exp(-y) - 1.0;
  return y;
}

DD dd_expm1(const DD& a) {
  if (std::abs(a.hi) > 0.125) return dd_exp(a) - 1.0;
  if (a.hi == 0.0 && a.lo == 0.0) return DD(0.0);
  // Taylor: a(1 + a/2(1 + a/3(...)))
  DD sum(1.0);
  for (int k = 18; k >= 2; --k) {
    sum = 1.0 + (a * sum) / double(k);
  }
  return a * sum;
}

DD dd_log1p(const DD& a) {
  if (std::abs(a.hi) < 1e-18) {
    // log(1+a) = a - a^2/2 + ...; second term already below working precision
    return a - dd_mul_pwr2(a * a, 0.5);
  }
  if (std::abs(a.hi) > 0.125) return dd_log(DD(1.0) + a);
  // Newton on exp(y) - 1 = a:  y <- y - (expm1(y) - a)/exp(y)
  DD y(std::log1p(a.hi));
  for (int it = 0; it < 2; ++it) {
    DD e = dd_expm1(y);
    y = y - (e - a) / (e + 1.0);
  }
  return y;
}

DD dd_floor(const DD& a) {
  double f = std::floor(a.hi);
  if (f != a.hi) return DD(f);
  // hi is integral; the fractional part lives in lo.
  return dd_detail::quick_two_sum(f, std::floor(a.lo));
}

DD dd_pow2(const DD& a) { return dd_exp(a * dd_const::ln2); }

DD dd_cos_taylor(const DD& a) {
  DD x2 = a * a;
  DD sum(1.0);
  DD term(1.0);
  for (int k = 1; k <= 10; ++k) {
    term = term * x2 / double((2 * k - 1) * (2 * k));
    sum = (k % 2 == 1) ? sum - term : sum + term;
  }
  return sum;
}

DD dd_sin_taylor(const DD& a) {
  DD x2 = a * a;
  DD sum = a;
  DD term = a;
  for (int k = 1; k <= 10; ++k) {
    term = term * x2 / double((2 * k) * (2 * k + 1));
    sum = (k % 2 == 1) ? sum - term : sum + term;
  }
  return sum;
}

const DD& dd_e4() {
  static const DD v = dd_exp(DD(4.0));
  return v;
}

std::string dd_to_string(const DD& a) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17e%+.17e", a.hi, a.lo);
  return buf;
}

}  // namespace distlab
