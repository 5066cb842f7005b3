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

#include "distlab/chebyshev.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace distlab {

namespace {

// cos(k pi / n) for k = 0..2n, via the Chebyshev recurrence seeded with a
// Taylor value of cos(pi/n).  Avoids needing general dd trig.
std::vector<DD> cos_table(int n) {
  std::vector<DD> c(2 * n + 1);
  DD theta = dd_const::pi / double(n);
  DD c1 = dd_cos_taylor(theta);
  c[0] = DD(1.0);
  if (n >= 1) c[1] = c1;
  for (int k = 2; k <= 2 * n; ++k) {
    c[k] = dd_mul_pwr2(c1 * c[k - 1], 2.0) - c[k - 2];
  }
  // Pin the exact values the recurrence should hit.
  c[n] = DD(-1.0);
  c[2 * n] = DD(1.0);
  return c;
}

}  // namespace

std::vector<DD> ChebyshevFit::lobatto_nodes(const DD& a, const DD& b, int n) {
  auto ct = cos_table(n);
  DD half = dd_mul_pwr2(b - a, 0.5);
  DD mid = dd_mul_pwr2(b + a, 0.5);
  std::vector<DD> xs(n + 1);
  for (int k = 0; k <= n; ++k) {
    // ascending in x: x_k = mid - half*cos(k pi / n) ... cos descending
    xs[k] = mid + half * ct[n - k];
  }
  xs[0] = a;
  xs[n] = b;
  return xs;
}

ChebyshevFit::ChebyshevFit(const std::function<DD(const DD&)>& f, const DD& a, const DD& b,
                           int n)
    : a_(a), b_(b) {
  auto xs = lobatto_nodes(a, b, n);
  std::vector<DD> vals(n + 1);
  for (int k = 0; k <= n; ++k) vals[k] = f(xs[k]);
  compute_coeffs(vals);
}

ChebyshevFit ChebyshevFit::from_values(const std::vector<DD>& values, const DD& a,
                                       const DD& b) {
  ChebyshevFit fit;
  fit.a_ = a;
  fit.b_ = b;
  fit.compute_coeffs(values);
  return fit;
}

void ChebyshevFit::compute_coeffs(const std::vector<DD>& vals_ascending) {
  int n = int(vals_ascending.size()) - 1;
  if (n < 1) throw std::invalid_argument("distlab::ChebyshevFit: need >= 2 nodes");
  auto ct = cos_table(n);
  // DCT-I: c_j = (2/n) * sum'' f(x_k) cos(j k pi / n), with x_k at cos(k pi/n).
  // vals_ascending[k] corresponds to cos((n-k) pi / n).
  std::vector<DD> v(n + 1);
  for (int k = 0; k <= n; ++k) v[k] = vals_ascending[n - k];
  coeffs_.assign(n + 1, DD(0.0));
  for (int j = 0; j <= n; ++j) {
    DD s = dd_mul_pwr2(v[0] + (j % 2 == 0 ? v[n] : -v[n]), 0.5);
    for (int k = 1; k < n; ++k) {
      s += v[k] * ct[(j * k) % (2 * n)];
    }
    coeffs_[j] = dd_mul_pwr2(s, 2.0) / double(n);
  }
  // eval() halves only c_0; fold the DCT-I half-weight of the top mode here.
  coeffs_[n] = dd_mul_pwr2(coeffs_[n], 0.5);
  coeffs_d_.resize(coeffs_.size());
  for (size_t j = 0; j < coeffs_.size(); ++j) coeffs_d_[j] = coeffs_[j].to_double();
}

DD ChebyshevFit::eval(const DD& x) const {
  // Clenshaw on t in [-1, 1].
  DD t = (dd_mul_pwr2(x, 2.0) - (a_ + b_)) / (b_ - a_);
  DD t2 = dd_mul_pwr2(t, 2.0);
  DD bk(0.0), bk1(0.0);
  for (int j = int(coeffs_.size()) - 1; j >= 1; --j) {
    DD tmp = t2 * bk - bk1 + coeffs_[j];
    bk1 = bk;
    bk = tmp;
  }
  return t * bk - bk1 + dd_mul_pwr2(coeffs_[0], 0.5);
}

double ChebyshevFit::eval_double(double x) const {
  double t = (2.0 * x - (a_.hi + b_.hi)) / (b_.hi - a_.hi);
  double t2 = 2.0 * t;
  double bk = 0.0, bk1 = 0.0;
  for (int j = int(coeffs_d_.size()) - 1; j >= 1; --j) {
    double tmp = t2 * bk - bk1 + coeffs_d_[j];
    bk1 = bk;
    bk = tmp;
  }
  return t * bk - bk1 + 0.5 * coeffs_d_[0];
}

ChebyshevFit ChebyshevFit::derivative() const {
  int n = int(coeffs_.size()) - 1;
  ChebyshevFit d;
  d.a_ = a_;
  d.b_ = b_;
  d.coeffs_.assign(n + 1, DD(0.0));
  // b_{j-1} = b_{j+1} + 2 j c_j on [-1,1], then scale by 2/(b-a).
  DD scale = 2.0 / (b_ - a_);
  for (int j = n; j >= 1; --j) {
    DD next = (j + 1 <= n - 1) ? d.coeffs_[j + 1] : DD(0.0);
    d.coeffs_[j - 1] = next + double(2 * j) * coeffs_[j];
  }
  for (auto& c : d.coeffs_) c = c * scale;
  d.coeffs_.resize(n);  // degree drops by one
  d.coeffs_d_.resize(d.coeffs_.size());
  for (size_t j = 0; j < d.coeffs_.size(); ++j) d.coeffs_d_[j] = d.coeffs_[j].to_double();
  return d;
}

double ChebyshevFit::tail_magnitude() const {
  size_t n = coeffs_.size();
  if (n < 2) return 0.0;
  return std::max(std::abs(coeffs_d_[n - 1]), std::abs(coeffs_d_[n - 2]));
}

PanelFit::PanelFit(const std::function<DD(const DD&)>& f,
                   const std::vector<double>& breakpoints, int n_per_panel)
    : breaks_(breakpoints) {
  if (breakpoints.size() < 2)
    throw std::invalid_argument("distlab::PanelFit: need >= 2 breakpoints");
  panels_.reserve(breakpoints.size() - 1);
  for (size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    panels_.emplace_back(f, DD(breakpoints[i]), DD(breakpoints[i + 1]), n_per_panel);
  }
}

DD PanelFit::eval(const DD& x) const {
  size_t i =
      std::upper_bound(breaks_.begin(), breaks_.end(), x.hi) - breaks_.begin();
  if (i == 0) i = 1;
  if (i >= breaks_.size()) i = breaks_.size() - 1;
  return panels_[i - 1].eval(x);
}

double PanelFit::eval_double(double x) const {
  size_t i = std::upper_bound(breaks_.begin(), breaks_.end(), x) - breaks_.begin();
  if (i == 0) i = 1;
  if (i >= breaks_.size()) i = breaks_.size() - 1;
  return panels_[i - 1].eval_double(x);
}

PanelFit PanelFit::derivative() const {
  PanelFit d;
  d.breaks_ = breaks_;
  d.panels_.reserve(panels_.size());
  for (const auto& p : panels_) d.panels_.push_back(p.derivative());
  return d;
}

double PanelFit::tail_magnitude() const {
  double m = 0.0;
  for (const auto& p : panels_) m = std::max(m, p.tail_magnitude());
  return m;
}

}  // namespace distlab
