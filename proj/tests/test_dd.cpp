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

#include <cmath>
#include <random>

#include "doctest.h"
#include "distlab/chebyshev.hpp"
#include "distlab/dd.hpp"
#include "distlab/quadrature.hpp"

using namespace distlab;

namespace {

// |a - (hi + lo)| in units of the reference lo magnitude
double err_vs(const DD& a, double hi, double lo) {
  return std::abs(((a - DD(hi)) - DD(lo)).to_double());
}

}  // namespace

TEST_CASE("dd elementary values") {
  // exp(1) = 2.718281828459045235360287...
  CHECK(err_vs(dd_exp(DD(1.0)), 2.718281828459045091e+00, 1.445646891729250158e-16) <
        1e-30);
  // log(2) = 0.693147180559945309417232...
  CHECK(err_vs(dd_log(DD(2.0)), 6.931471805599452862e-01, 2.319046813846299558e-17) <
        1e-31);
  // sqrt(2) = 1.414213562373095048801689...
  CHECK(err_vs(dd_sqrt(DD(2.0)), 1.414213562373095145e+00, -9.667293313452913451e-17) <
        1e-31);
  CHECK(dd_exp(DD(0.0)).to_double() == 1.0);
  CHECK(dd_floor(DD(2.5)).to_double() == 2.0);
  CHECK(dd_floor(DD(-2.5)).to_double() == -3.0);
  CHECK(dd_floor(DD(3.0, -1e-20)).to_double() == 2.0);
  CHECK(dd_pow2(DD(3.0)).to_double() == 8.0);
}

TEST_CASE("dd round trips and series cutoffs") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> mag(-600.0, 600.0);
  for (int i = 0; i < 200; ++i) {
    DD x(mag(rng));
    DD y = dd_log(dd_exp(x));
    CHECK(std::abs((y - x).to_double()) < 1e-28 * (1.0 + std::abs(x.hi)));
  }
  for (int i = 0; i < 200; ++i) {
    double v = std::exp(mag(rng) / 40.0);
    DD s = dd_sqrt(DD(v));
    CHECK(std::abs(((s * s - DD(v)) / DD(v)).to_double()) < 1e-30);
  }
  // expm1 stays relatively accurate through the Taylor/exp switch; the
  // exp(t)-1 reference is only usable where the cancellation leaves digits
  for (double t : {0.05, 0.1, 0.124, 0.126, 0.5, -0.05, -0.3}) {
    DD em = dd_expm1(DD(t));
    DD ref = dd_exp(DD(t)) - 1.0;
    CHECK(std::abs(((em - ref) / ref).to_double()) < 1e-25);
  }
  for (double t : {1e-25, 1e-12, 1e-9}) {
    DD em = dd_expm1(DD(t));
    DD ref = DD(t) + dd_mul_pwr2(DD(t) * DD(t), 0.5);  // t + t^2/2, next term t^3/6
    CHECK(std::abs((em - ref).to_double()) < t * t * t + t * 1e-30);
  }
  for (double t : {1e-25, 1e-9, 0.01, 0.124, 0.126, -0.05}) {
    DD l = dd_log1p(DD(t));
    DD back = dd_expm1(l);
    CHECK(std::abs(((back - DD(t)) / DD(t)).to_double()) < 1e-26);
  }
}

TEST_CASE("dd arithmetic keeps the low limb") {
  DD a(1.0, 1e-25);
  DD b = a - 1.0;
  CHECK(b.to_double() == doctest::Approx(1e-25).epsilon(1e-12));
  DD c = (DD(1.0) / 3.0) * 3.0 - 1.0;
  CHECK(std::abs(c.to_double()) < 1e-31);
}

TEST_CASE("gauss-legendre integrates analytic integrands to dd accuracy") {
  const auto& rule = gl_rule(32);
  DD I = rule.integrate([](const DD& x) { return dd_exp(x); }, DD(0.0), DD(1.0));
  DD ref = dd_exp(DD(1.0)) - 1.0;
  CHECK(std::abs(((I - ref) / ref).to_double()) < 1e-28);
  DD J = rule.integrate([](const DD& x) { return DD(1.0) / (1.0 + x * x); }, DD(0.0),
                        DD(1.0));
  // pi/4
  DD pi4 = dd_mul_pwr2(dd_const::pi, 0.25);
  CHECK(std::abs(((J - pi4) / pi4).to_double()) < 1e-28);
}

TEST_CASE("chebyshev fit reproduces analytic functions between nodes") {
  ChebyshevFit fit([](const DD& x) { return dd_exp(x); }, DD(0.0), DD(2.0), 48);
  CHECK(fit.tail_magnitude() < 1e-28);
  for (double x : {0.05, 0.7, 1.33, 1.97}) {
    DD v = fit.eval(DD(x));
    DD t = dd_exp(DD(x));
    CHECK(std::abs(((v - t) / t).to_double()) < 1e-28);
  }
  ChebyshevFit d = fit.derivative();
  for (double x : {0.3, 1.5}) {
    DD v = d.eval(DD(x));
    DD t = dd_exp(DD(x));
    CHECK(std::abs(((v - t) / t).to_double()) < 1e-26);
  }
}

TEST_CASE("cos taylor seed matches double cos") {
  for (double t : {0.01, 0.05, 0.12, 0.19}) {
    CHECK(dd_cos_taylor(DD(t)).to_double() == doctest::Approx(std::cos(t)).epsilon(1e-15));
    CHECK(dd_sin_taylor(DD(t)).to_double() == doctest::Approx(std::sin(t)).epsilon(1e-15));
  }
}
