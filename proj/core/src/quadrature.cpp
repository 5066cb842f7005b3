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

#include "distlab/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace distlab {

namespace {

// Legendre P_n and P_n' at x via the three-term recurrence.
void legendre(int n, const DD& x, DD* p, DD* dp) {
  DD p0(1.0), p1 = x;
  for (int k = 2; k <= n; ++k) {
    DD pk = (double(2 * k - 1) * (x * p1) - double(k - 1) * p0) / double(k);
    p0 = p1;
    p1 = pk;
  }
  *p = p1;
  // P_n'(x) = n (x P_n - P_{n-1}) / (x^2 - 1)
  *dp = double(n) * (x * p1 - p0) / (x * x - 1.0);
}

}  // namespace

GaussLegendre::GaussLegendre(int n) {
  nodes.resize(n);
  weights.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Double-precision seed, then Newton in double-double.
    DD x(std::cos(M_PI * (i + 0.75) / (n + 0.5)));
    DD p, dp;
    for (int it = 0; it < 4; ++it) {
      legendre(n, x, &p, &dp);
      x = x - p / dp;
    }
    legendre(n, x, &p, &dp);
    DD w = 2.0 / ((1.0 - x * x) * (dp * dp));
    nodes[i] = -x;  // ascending order
    weights[i] = w;
    nodes[n - 1 - i] = x;
    weights[n - 1 - i] = w;
  }
}

DD GaussLegendre::integrate(const std::function<DD(const DD&)>& f, const DD& a,
                            const DD& b) const {
  DD half = dd_mul_pwr2(b - a, 0.5);
  DD mid = dd_mul_pwr2(b + a, 0.5);
  DD sum(0.0);
  for (size_t i = 0; i < nodes.size(); ++i) {
    sum += weights[i] * f(mid + half * nodes[i]);
  }
  return half * sum;
}

const GaussLegendre& gl_rule(int n) {
  static std::map<int, GaussLegendre> rules;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = rules.find(n);
  if (it == rules.end()) it = rules.emplace(n, GaussLegendre(n)).first;
  return it->second;
}

}  // namespace distlab
